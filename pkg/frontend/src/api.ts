// Typed client for the quiverlab session service.  Every piece of
// mathematical state the UI shows comes out of these calls; the client
// never transforms matrices, only ferries JSON.

export interface VertexObj {
    id: number;
    frozen: boolean;
}

/** [from, to, multiplicity] with 1-based vertex ids. */
export type ArrowTriple = [number, number, number];

export interface QuiverObj {
    type: "ice_quiver";
    vertices: VertexObj[];
    arrows: ArrowTriple[];
}

export type VertexStatus = "green" | "red" | "frozen";

/** One history entry: a mutated vertex, or a reduction event. */
export type HistoryEntry = number | { reduce: ReductionScriptObj };

export interface SessionState {
    id: string;
    quiver: QuiverObj;
    status: VertexStatus[];
    cluster: string[];
    term_counts: number[];
    history: HistoryEntry[];
}

export interface ReductionScriptObj {
    mutations: number[];
    freezes: number[];
    deletions: number[];
}

export class ApiError extends Error {
    constructor(
        public status: number,
        detail: string,
    ) {
        super(detail);
    }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function expectJson<T>(resp: Response): Promise<T> {
    if (!resp.ok) {
        let detail = resp.statusText;
        try {
            const body = await resp.json();
            if (body && typeof body.detail === "string") detail = body.detail;
        } catch {
            /* non-JSON error body; keep the status text */
        }
        throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
}

export class ApiClient {
    private fetchFn: FetchLike;

    constructor(
        public baseUrl: string,
        fetchFn?: FetchLike,
    ) {
        this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
    }

    private post<T>(path: string, body?: unknown): Promise<T> {
        return this.fetchFn(this.baseUrl + path, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        }).then((r) => expectJson<T>(r));
    }

    createSession(body: { builtin: string } | QuiverObj): Promise<SessionState> {
        return this.post("/sessions", body);
    }

    getSession(id: string): Promise<SessionState> {
        return this.fetchFn(`${this.baseUrl}/sessions/${id}`).then((r) =>
            expectJson<SessionState>(r),
        );
    }

    mutate(id: string, vertex: number): Promise<SessionState> {
        return this.post(`/sessions/${id}/mutate`, { vertex });
    }

    undo(id: string): Promise<SessionState> {
        return this.post(`/sessions/${id}/undo`);
    }

    reduce(id: string, script: ReductionScriptObj): Promise<SessionState> {
        return this.post(`/sessions/${id}/reduce`, script);
    }

    reddening(quiver: QuiverObj, depth: number): Promise<number[] | null> {
        return this.post<{ sequence: number[] | null }>("/reddening", {
            quiver,
            depth,
        }).then((body) => body.sequence);
    }

    exportQuiver(id: string): Promise<QuiverObj> {
        return this.fetchFn(`${this.baseUrl}/export/${id}`).then((r) =>
            expectJson<QuiverObj>(r),
        );
    }
}
