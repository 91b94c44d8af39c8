import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";

interface Call {
    url: string;
    init?: RequestInit;
}

function stub(status: number, body: unknown): { client: ApiClient; calls: Call[] } {
    const calls: Call[] = [];
    const fetchFn = async (url: string, init?: RequestInit) => {
        calls.push({ url, init });
        return new Response(JSON.stringify(body), { status });
    };
    return { client: new ApiClient("http://svc", fetchFn), calls };
}

describe("ApiClient", () => {
    it("posts the builtin body to /sessions", async () => {
        const { client, calls } = stub(201, { id: "abc" });
        await client.createSession({ builtin: "gls-A4-richardson" });
        expect(calls[0].url).toBe("http://svc/sessions");
        expect(calls[0].init?.method).toBe("POST");
        expect(JSON.parse(calls[0].init?.body as string)).toEqual({
            builtin: "gls-A4-richardson",
        });
    });

    it("posts the vertex for a mutation", async () => {
        const { client, calls } = stub(200, { id: "abc" });
        await client.mutate("abc", 3);
        expect(calls[0].url).toBe("http://svc/sessions/abc/mutate");
        expect(JSON.parse(calls[0].init?.body as string)).toEqual({ vertex: 3 });
    });

    it("unwraps the reddening sequence", async () => {
        const { client } = stub(200, { sequence: [3, 2, 1] });
        const quiver = { type: "ice_quiver" as const, vertices: [], arrows: [] };
        expect(await client.reddening(quiver, 20)).toEqual([3, 2, 1]);
    });

    it("surfaces the server detail on failures", async () => {
        const { client } = stub(409, { detail: "vertex 4 is frozen" });
        await expect(client.mutate("abc", 4)).rejects.toThrowError(ApiError);
        await expect(client.mutate("abc", 4)).rejects.toThrowError(
            "vertex 4 is frozen",
        );
    });

    it("keeps the status text when the error body is not JSON", async () => {
        const fetchFn = async () =>
            new Response("boom", { status: 500, statusText: "Server Error" });
        const client = new ApiClient("http://svc", fetchFn);
        try {
            await client.undo("abc");
            expect.unreachable();
        } catch (err) {
            expect(err).toBeInstanceOf(ApiError);
            expect((err as ApiError).status).toBe(500);
        }
    });
});
