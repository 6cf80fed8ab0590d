// Browser entry: binds the state machine to the DOM.  All logic lives in
// model.ts/render.ts; this file is deliberately thin event glue.

import { ApiClient, ContextVar } from "./api.js";
import { AppFlow, acceptRecommendation, overrideWithText } from "./model.js";
import { renderApp } from "./render.js";

const client = new ApiClient("");
const flow = new AppFlow(client);
const root = document.getElementById("app") as HTMLElement;

// Context variables the user "has" in their editor; kept in a simple text
// field as name:Type pairs so the demo stays dependency-free.
function currentContext(): ContextVar[] {
  const raw = (document.getElementById("context") as HTMLInputElement)?.value ?? "";
  return raw
    .split(",")
    .map((part) => part.trim())
    .filter(Boolean)
    .map((part) => {
      const [name, type] = part.split(":").map((s) => s.trim());
      return { name, type: type ?? "" };
    })
    .filter((v) => v.name && v.type);
}

function draw(): void {
  root.innerHTML = renderApp(flow.state);
  const query = root.querySelector<HTMLInputElement>("[data-role=query]");
  query?.addEventListener("input", async () => {
    await flow.search(query.value);
    // keep focus while the list refreshes under the input
    const pos = query.selectionStart;
    draw();
    const again = root.querySelector<HTMLInputElement>("[data-role=query]");
    again?.focus();
    if (pos !== null) {
      again?.setSelectionRange(pos, pos);
    }
  });
  root.querySelectorAll<HTMLButtonElement>("[data-action=select]").forEach((btn) =>
    btn.addEventListener("click", async () => {
      await flow.select(btn.dataset.id as string, currentContext());
      draw();
    }),
  );
  root.querySelectorAll<HTMLElement>("[data-hole]").forEach((box) => {
    const holeId = box.dataset.hole as string;
    const input = box.querySelector<HTMLInputElement>("[data-role=hole-input]");
    input?.addEventListener("change", () => {
      flow.setHole(holeId, (h) => overrideWithText(h, input.value));
      draw();
    });
    const select = box.querySelector<HTMLSelectElement>("[data-role=hole-select]");
    select?.addEventListener("change", () => {
      const rank = select.selectedIndex; // option 0 is the label
      if (rank >= 1) {
        flow.setHole(holeId, (h) => acceptRecommendation(h, rank));
        draw();
      }
    });
  });
  root.querySelector("[data-action=submit]")?.addEventListener("click", async () => {
    await flow.submit();
    draw();
  });
  root.querySelector("[data-action=back]")?.addEventListener("click", () => {
    flow.backToSearch();
    draw();
  });
  root.querySelector("[data-action=retry]")?.addEventListener("click", async () => {
    await flow.search(flow.state.query);
    draw();
  });
  root.querySelector("[data-action=copy]")?.addEventListener("click", async () => {
    const code = root.querySelector("[data-role=snippet-code]")?.textContent ?? "";
    await navigator.clipboard.writeText(code);
  });
}

(async () => {
  await flow.search("");
  draw();
})();
