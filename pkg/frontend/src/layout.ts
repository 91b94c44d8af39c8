// Initial vertex placement.  Cosmetic only: positions never feed back into
// any request, and dragging just edits this map.

import type { ArrowTriple, QuiverObj } from "./api";

export interface Point {
    x: number;
    y: number;
}

export type Layout = Map<number, Point>;

const COL_GAP = 110;
const ROW_GAP = 90;
const MARGIN = 60;

/** Known builtin words, used to place their quivers like the original
 * figures: the letter picks the row, the position within the word the
 * column.  Purely presentational duplicates of the server's builtins. */
export const BUILTIN_WORDS: Record<string, number[]> = {
    "gls-A4-w0": [1, 2, 3, 4, 1, 2, 3, 1, 2, 1],
    "gls-A4-richardson": [1, 2, 3, 1, 2, 4, 3],
};

/** Row = letter, column = position in the word; vertex k is 1-based. */
export function layoutFromWord(word: number[]): Layout {
    const layout: Layout = new Map();
    for (let k = 1; k <= word.length; k++) {
        layout.set(k, {
            x: MARGIN + (k - 1) * COL_GAP,
            y: MARGIN + (word[k - 1] - 1) * ROW_GAP,
        });
    }
    return layout;
}

function adjacency(n: number, arrows: ArrowTriple[]): Map<number, number[]> {
    const out = new Map<number, number[]>();
    for (let v = 1; v <= n; v++) out.set(v, []);
    for (const [from, to] of arrows) out.get(from)!.push(to);
    return out;
}

/** Breadth-first layering.  Sources (no incoming arrows) sit in column 0;
 * when the quiver is entirely cyclic the smallest id starts the sweep.
 * Deterministic: ties broken by vertex id. */
export function layeredLayout(quiver: QuiverObj): Layout {
    const n = quiver.vertices.length;
    const out = adjacency(n, quiver.arrows);
    const indeg = new Map<number, number>();
    for (let v = 1; v <= n; v++) indeg.set(v, 0);
    for (const [, to] of quiver.arrows) indeg.set(to, (indeg.get(to) ?? 0) + 1);

    const layer = new Map<number, number>();
    let frontier: number[] = [];
    for (let v = 1; v <= n; v++) if (indeg.get(v) === 0) frontier.push(v);
    let next = 1;
    while (layer.size < n) {
        if (frontier.length === 0) {
            while (layer.has(next)) next++;
            frontier = [next];
        }
        for (const v of frontier) if (!layer.has(v)) layer.set(v, 0);
        let depth = 0;
        while (frontier.length > 0) {
            const upcoming: number[] = [];
            for (const v of frontier.sort((a, b) => a - b)) {
                for (const w of out.get(v)!) {
                    if (!layer.has(w)) {
                        layer.set(w, depth + 1);
                        upcoming.push(w);
                    }
                }
            }
            frontier = upcoming;
            depth++;
        }
    }

    // stack each column top to bottom by id
    const slot = new Map<number, number>();
    const used = new Map<number, number>();
    for (let v = 1; v <= n; v++) {
        const col = layer.get(v)!;
        const s = used.get(col) ?? 0;
        slot.set(v, s);
        used.set(col, s + 1);
    }
    const layout: Layout = new Map();
    for (let v = 1; v <= n; v++) {
        layout.set(v, {
            x: MARGIN + layer.get(v)! * COL_GAP,
            y: MARGIN + slot.get(v)! * ROW_GAP,
        });
    }
    return layout;
}

export function initialLayout(quiver: QuiverObj, builtin?: string): Layout {
    if (builtin && BUILTIN_WORDS[builtin]) {
        const word = BUILTIN_WORDS[builtin];
        if (word.length === quiver.vertices.length) return layoutFromWord(word);
    }
    return layeredLayout(quiver);
}
