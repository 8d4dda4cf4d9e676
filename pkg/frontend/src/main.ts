// Bootstrap: stepper navigation plus the active step's form.

import { ApiClient } from "./api.js";
import { el } from "./dom.js";
import {
  StepId,
  STEP_IDS,
  WizardState,
  completeStep,
  editStep,
  firstOpenStep,
  isUnlocked,
  loadTemplate,
  newWizard,
} from "./state.js";
import {
  Controller,
  renderStep1,
  renderStep2,
  renderStep3,
  renderStep4,
  renderStep5,
  renderStep6,
} from "./steps.js";
import { Template } from "./types.js";

const STEP_TITLES: Record<StepId, string> = {
  1: "Start",
  2: "Rooms",
  3: "Age & stay",
  4: "Lead time",
  5: "Rates",
  6: "Generate",
};

const RENDERERS: Record<StepId, (ctl: Controller, host: HTMLElement) => void> = {
  1: renderStep1,
  2: renderStep2,
  3: renderStep3,
  4: renderStep4,
  5: renderStep5,
  6: renderStep6,
};

export function mountApp(root: HTMLElement, baseUrl: string): Controller {
  let state: WizardState = newWizard();
  let active: StepId = 1;
  const api = new ApiClient(baseUrl);

  const ctl: Controller = {
    get state() {
      return state;
    },
    set state(next: WizardState) {
      state = next;
    },
    api,
    edit(step, values) {
      state = editStep(state, step, values);
      if (active > step) active = step;
    },
    complete(step) {
      state = completeStep(state, step);
      const next = Math.min(step + 1, 6) as StepId;
      if (isUnlocked(state, next)) active = next;
    },
    loadTemplate(doc: Template) {
      state = loadTemplate(doc);
      active = 1;
    },
    rerender: render,
  };

  function render(): void {
    root.replaceChildren();
    const nav = el("nav", { className: "stepper" });
    for (const step of STEP_IDS) {
      const unlocked = isUnlocked(state, step);
      const btn = el(
        "button",
        {
          type: "button",
          className: [
            "step-tab",
            step === active ? "active" : "",
            state.valid[step] ? "done" : "",
            unlocked ? "" : "locked",
          ]
            .filter(Boolean)
            .join(" "),
        },
        `${step}. ${STEP_TITLES[step]}`,
      );
      btn.disabled = !unlocked;
      btn.addEventListener("click", () => {
        active = step;
        render();
      });
      nav.append(btn);
    }
    root.append(nav);
    const host = el("section", { className: "step-body" });
    if (!isUnlocked(state, active)) active = firstOpenStep(state);
    RENDERERS[active](ctl, host);
    root.append(host);
  }

  render();
  return ctl;
}

declare global {
  interface Window {
    PRAGEN_API_URL?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(
    document.getElementById("app") as HTMLElement,
    window.PRAGEN_API_URL ?? "http://127.0.0.1:8787",
  );
}
