// The explorer widget.  One class owns the SVG canvas and the side panels;
// every interaction is a server round trip and the screen is only redrawn
// from the response (no optimistic updates), so what you see is always the
// service's last word.

import { ApiClient, ApiError } from "./api";
import type {
    HistoryEntry,
    QuiverObj,
    ReductionScriptObj,
    SessionState,
} from "./api";
import { initialLayout, type Layout, type Point } from "./layout";
import { scriptSkeleton } from "./recorder";

const SVG_NS = "http://www.w3.org/2000/svg";
const SQUARE = 28; // frozen marker side
const RADIUS = 15; // mutable disc radius

const FILL = {
    green: "#69b548",
    red: "#d4493f",
    frozen: "#b9c6d4",
    plain: "#e8e8e8",
};

export interface ExplorerPanels {
    svg: SVGSVGElement;
    cluster: HTMLElement;
    history: HTMLElement;
    banner: HTMLElement;
}

export class MutationExplorer {
    state: SessionState | null = null;
    layout: Layout = new Map();
    selectedHistoryIndex = -1;
    showVariables = true;
    showStatus = true;

    private queue: Promise<void> = Promise.resolve();
    private dragging: { id: number; offsetX: number; offsetY: number } | null =
        null;

    constructor(
        public api: ApiClient,
        private panels: ExplorerPanels,
    ) {
        panels.svg.addEventListener("mousemove", (ev) =>
            this.moveDrag(ev.offsetX, ev.offsetY),
        );
        panels.svg.addEventListener("mouseup", () => this.endDrag());
    }

    // ---- command queue -------------------------------------------------
    // clicks are serialized: each awaits the server before the next runs

    private run(op: () => Promise<void>): Promise<void> {
        this.queue = this.queue.then(op).catch((err) => this.showError(err));
        return this.queue;
    }

    /** Resolves when every queued interaction has been confirmed. */
    whenIdle(): Promise<void> {
        return this.queue;
    }

    // ---- session commands ----------------------------------------------

    loadBuiltin(name: string): Promise<void> {
        return this.run(async () => {
            const state = await this.api.createSession({ builtin: name });
            this.layout = initialLayout(state.quiver, name);
            this.accept(state);
        });
    }

    loadQuiver(quiver: QuiverObj): Promise<void> {
        return this.run(async () => {
            const state = await this.api.createSession(quiver);
            this.layout = initialLayout(state.quiver);
            this.accept(state);
        });
    }

    clickVertex(vertex: number): Promise<void> {
        return this.run(async () => {
            if (!this.state) return;
            this.accept(await this.api.mutate(this.state.id, vertex));
        });
    }

    undo(): Promise<void> {
        return this.run(async () => {
            if (!this.state) return;
            this.accept(await this.api.undo(this.state.id));
        });
    }

    reduceWith(script: ReductionScriptObj): Promise<void> {
        return this.run(async () => {
            if (!this.state) return;
            const state = await this.api.reduce(this.state.id, script);
            this.layout = initialLayout(state.quiver); // vertex ids renumbered
            this.accept(state);
        });
    }

    /** Ask the service for a reddening sequence of the current quiver and
     * replay it click by click, redrawing after each confirmed step. */
    checkReddening(depth = 20): Promise<number[] | null> {
        let found: number[] | null = null;
        return this.run(async () => {
            if (!this.state) return;
            const quiver = await this.api.exportQuiver(this.state.id);
            found = await this.api.reddening(quiver, depth);
            if (found === null) {
                this.panels.banner.textContent =
                    `no reddening sequence within depth ${depth}`;
                return;
            }
            for (const k of found) {
                this.accept(await this.api.mutate(this.state.id, k));
            }
        }).then(() => found);
    }

    /** The recorded history as a reduction-script skeleton. */
    exportScript(): ReductionScriptObj {
        return scriptSkeleton(this.state ? this.state.history : []);
    }

    selectHistory(index: number): void {
        this.selectedHistoryIndex = index;
        this.renderHistory();
    }

    setShowVariables(on: boolean): void {
        this.showVariables = on;
        this.redraw();
    }

    setShowStatus(on: boolean): void {
        this.showStatus = on;
        this.redraw();
    }

    // ---- dragging (cosmetic only) ----------------------------------------

    beginDrag(id: number, x: number, y: number): void {
        const p = this.layout.get(id);
        if (!p) return;
        this.dragging = { id, offsetX: x - p.x, offsetY: y - p.y };
    }

    moveDrag(x: number, y: number): void {
        if (!this.dragging) return;
        this.layout.set(this.dragging.id, {
            x: x - this.dragging.offsetX,
            y: y - this.dragging.offsetY,
        });
        this.redraw();
    }

    endDrag(): void {
        this.dragging = null;
    }

    // ---- rendering -------------------------------------------------------

    private accept(state: SessionState): void {
        this.state = state;
        this.selectedHistoryIndex = state.history.length - 1;
        this.panels.banner.textContent = "";
        this.redraw();
    }

    private showError(err: unknown): void {
        const msg =
            err instanceof ApiError
                ? `${err.status}: ${err.message}`
                : String(err);
        this.panels.banner.textContent = msg;
    }

    redraw(): void {
        const svg = this.panels.svg;
        while (svg.firstChild) svg.removeChild(svg.firstChild);
        if (!this.state) return;
        this.ensureLayout();
        this.renderArrows(svg);
        this.renderVertices(svg);
        this.renderCluster();
        this.renderHistory();
    }

    private ensureLayout(): void {
        if (!this.state) return;
        for (const v of this.state.quiver.vertices) {
            if (!this.layout.has(v.id)) {
                this.layout = initialLayout(this.state.quiver);
                return;
            }
        }
    }

    private renderArrows(svg: SVGSVGElement): void {
        const defs = document.createElementNS(SVG_NS, "defs");
        const marker = document.createElementNS(SVG_NS, "marker");
        marker.setAttribute("id", "arrowhead");
        marker.setAttribute("markerWidth", "9");
        marker.setAttribute("markerHeight", "7");
        marker.setAttribute("refX", "9");
        marker.setAttribute("refY", "3.5");
        marker.setAttribute("orient", "auto");
        const tip = document.createElementNS(SVG_NS, "polygon");
        tip.setAttribute("points", "0 0, 9 3.5, 0 7");
        tip.setAttribute("fill", "#444");
        marker.appendChild(tip);
        defs.appendChild(marker);
        svg.appendChild(defs);

        for (const [from, to, mult] of this.state!.quiver.arrows) {
            const a = this.layout.get(from)!;
            const b = this.layout.get(to)!;
            // trim the segment so the head is not buried in the vertex
            const dx = b.x - a.x;
            const dy = b.y - a.y;
            const len = Math.hypot(dx, dy) || 1;
            const pad = RADIUS + 6;
            const x1 = a.x + (dx / len) * pad;
            const y1 = a.y + (dy / len) * pad;
            const x2 = b.x - (dx / len) * pad;
            const y2 = b.y - (dy / len) * pad;

            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", String(x1));
            line.setAttribute("y1", String(y1));
            line.setAttribute("x2", String(x2));
            line.setAttribute("y2", String(y2));
            line.setAttribute("stroke", "#444");
            line.setAttribute("stroke-width", mult > 1 ? "2.5" : "1.5");
            line.setAttribute("marker-end", "url(#arrowhead)");
            line.setAttribute("class", "arrow");
            line.setAttribute("data-arrow", `${from}-${to}`);
            line.setAttribute("data-from", String(from));
            line.setAttribute("data-to", String(to));
            line.setAttribute("data-mult", String(mult));
            svg.appendChild(line);

            if (mult > 1) {
                const label = document.createElementNS(SVG_NS, "text");
                label.setAttribute("x", String((x1 + x2) / 2 + 6));
                label.setAttribute("y", String((y1 + y2) / 2 - 6));
                label.setAttribute("class", "arrow-mult");
                label.textContent = String(mult);
                svg.appendChild(label);
            }
        }
    }

    private renderVertices(svg: SVGSVGElement): void {
        const state = this.state!;
        for (const v of state.quiver.vertices) {
            const p = this.layout.get(v.id)!;
            const status = state.status[v.id - 1];
            const group = document.createElementNS(SVG_NS, "g");
            group.setAttribute("class", v.frozen ? "vertex square" : "vertex disc");
            group.setAttribute("data-vertex", String(v.id));
            group.setAttribute("data-status", status);

            let shape: SVGElement;
            if (v.frozen) {
                shape = document.createElementNS(SVG_NS, "rect");
                shape.setAttribute("x", String(p.x - SQUARE / 2));
                shape.setAttribute("y", String(p.y - SQUARE / 2));
                shape.setAttribute("width", String(SQUARE));
                shape.setAttribute("height", String(SQUARE));
                shape.setAttribute("fill", FILL.frozen);
            } else {
                shape = document.createElementNS(SVG_NS, "circle");
                shape.setAttribute("cx", String(p.x));
                shape.setAttribute("cy", String(p.y));
                shape.setAttribute("r", String(RADIUS));
                shape.setAttribute(
                    "fill",
                    this.showStatus && status !== "frozen"
                        ? FILL[status]
                        : FILL.plain,
                );
            }
            shape.setAttribute("stroke", "#333");
            group.appendChild(shape);

            const label = document.createElementNS(SVG_NS, "text");
            label.setAttribute("x", String(p.x));
            label.setAttribute("y", String(p.y + 4));
            label.setAttribute("text-anchor", "middle");
            label.setAttribute("class", "vertex-id");
            label.textContent = String(v.id);
            group.appendChild(label);

            if (this.showVariables) {
                const expr = document.createElementNS(SVG_NS, "text");
                expr.setAttribute("x", String(p.x));
                expr.setAttribute("y", String(p.y + RADIUS + 16));
                expr.setAttribute("text-anchor", "middle");
                expr.setAttribute("class", "vertex-variable");
                expr.textContent = this.variableText(v.id);
                group.appendChild(expr);
            }

            if (!v.frozen) {
                // frozen vertices take no clicks at all
                group.addEventListener("click", () => {
                    void this.clickVertex(v.id);
                });
                group.setAttribute("cursor", "pointer");
            }
            group.addEventListener("mousedown", (ev) => {
                this.beginDrag(v.id, ev.offsetX, ev.offsetY);
            });
            svg.appendChild(group);
        }
    }

    private variableText(id: number): string {
        const state = this.state!;
        const expr = state.cluster[id - 1];
        if (expr === "<large>") {
            return `<large> (${state.term_counts[id - 1]} terms)`;
        }
        return expr;
    }

    private renderCluster(): void {
        const panel = this.panels.cluster;
        panel.textContent = "";
        if (!this.showVariables || !this.state) return;
        for (const v of this.state.quiver.vertices) {
            const row = document.createElement("div");
            row.setAttribute("class", "cluster-row");
            row.setAttribute("data-cluster-vertex", String(v.id));
            row.textContent = `x${v.id} = ${this.variableText(v.id)}`;
            panel.appendChild(row);
        }
    }

    private historyLabel(entry: HistoryEntry): string {
        if (typeof entry === "number") return `mutate ${entry}`;
        const s = entry.reduce;
        return `reduce (freeze ${s.freezes.join(",") || "-"}; delete ${
            s.deletions.join(",") || "-"
        })`;
    }

    private renderHistory(): void {
        const panel = this.panels.history;
        panel.textContent = "";
        if (!this.state) return;
        this.state.history.forEach((entry, index) => {
            const item = document.createElement("div");
            item.setAttribute(
                "class",
                index === this.selectedHistoryIndex
                    ? "history-entry selected"
                    : "history-entry",
            );
            item.setAttribute("data-history-index", String(index));
            item.textContent = `${index + 1}. ${this.historyLabel(entry)}`;
            item.addEventListener("click", () => this.selectHistory(index));
            panel.appendChild(item);
        });
    }
}
