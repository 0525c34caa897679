import { browserEnv, ChatWidget } from "./widget";
function mount() {
    const root = document.getElementById("moocbot-root");
    if (!root) {
        console.error("moocbot: no #moocbot-root element to mount on");
        return;
    }
    new ChatWidget({ root, env: browserEnv(window) });
}
if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", mount);
}
else {
    mount();
}
