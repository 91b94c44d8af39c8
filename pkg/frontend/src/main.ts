import { ApiClient } from "./api";
import { MutationExplorer } from "./view";

const DEFAULT_SERVICE = "http://127.0.0.1:7161";

function el<T extends HTMLElement>(id: string): T {
    return document.getElementById(id) as T;
}

const api = new ApiClient(DEFAULT_SERVICE);
const explorer = new MutationExplorer(api, {
    svg: el<HTMLElement>("canvas") as unknown as SVGSVGElement,
    cluster: el("cluster-panel"),
    history: el("history-panel"),
    banner: el("error-banner"),
});

el<HTMLButtonElement>("load-button").onclick = () => {
    const select = el<HTMLSelectElement>("builtin-select");
    void explorer.loadBuiltin(select.value);
};

el<HTMLButtonElement>("undo-button").onclick = () => {
    void explorer.undo();
};

el<HTMLButtonElement>("reddening-button").onclick = () => {
    void explorer.checkReddening(20);
};

el<HTMLButtonElement>("export-script-button").onclick = () => {
    const script = explorer.exportScript();
    const blob = new Blob([JSON.stringify(script, null, 2)], {
        type: "application/json",
    });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "reduction-script.json";
    link.click();
    URL.revokeObjectURL(link.href);
};

el<HTMLInputElement>("toggle-variables").onchange = (ev) => {
    explorer.setShowVariables((ev.target as HTMLInputElement).checked);
};

el<HTMLInputElement>("toggle-status").onchange = (ev) => {
    explorer.setShowStatus((ev.target as HTMLInputElement).checked);
};

void explorer.loadBuiltin("gls-A4-richardson");
