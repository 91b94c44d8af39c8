import type { HistoryEntry, ReductionScriptObj } from "./api";

/** Collapse a session history into a reduction-script skeleton: the clicked
 * vertices become the mutation phase, freeze and delete phases are left
 * empty for the user to fill in.  Reduction events already applied on the
 * server are not repeated. */
export function scriptSkeleton(history: HistoryEntry[]): ReductionScriptObj {
    const mutations: number[] = [];
    for (const entry of history) {
        if (typeof entry === "number") mutations.push(entry);
    }
    return { mutations, freezes: [], deletions: [] };
}
