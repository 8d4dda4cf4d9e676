// Step renderers.  Each step renders its form from the wizard state, pushes
// edits through the controller (which re-locks later steps), and asks the
// service to validate before the step can be completed.

import { ApiClient, ApiError } from "./api.js";
import { renderCurve, renderHeatmap, renderHistogram, renderLoadBars } from "./charts.js";
import { button, checkbox, el, labeled, numberInput, select } from "./dom.js";
import {
  StepId,
  WizardState,
  buildTemplate,
  choiceProblems,
  classificationIsFresh,
  step1Problems,
  step2Problems,
  step6Problems,
} from "./state.js";
import { DistributionChoice, RateKey, Template } from "./types.js";

export interface Controller {
  state: WizardState;
  api: ApiClient;
  edit<K extends StepId>(step: K, values: object): void;
  complete(step: StepId): void;
  loadTemplate(doc: Template): void;
  rerender(): void;
}

function problemList(problems: string[]): HTMLElement {
  const box = el("div", { className: "problems" });
  for (const p of problems) box.append(el("p", { className: "problem" }, p));
  return box;
}

function nextButton(ctl: Controller, step: StepId, problems: string[]): HTMLElement {
  const btn = button("Continue", () => {
    ctl.complete(step);
    ctl.rerender();
  });
  if (problems.length > 0) btn.disabled = true;
  return el("div", { className: "step-actions" }, btn);
}

// -- step 1: template, horizon, load, toggles --------------------------------

export function renderStep1(ctl: Controller, host: HTMLElement): void {
  const v = ctl.state.step1;
  host.append(el("h2", {}, "1. Start"));

  const templateRow = el("div", { className: "template-row" });
  const templateSelect = el("select", {});
  templateSelect.append(el("option", { value: "" }, "— stored templates —"));
  void ctl.api.listTemplates().then(({ templates }) => {
    for (const t of templates) {
      templateSelect.append(el("option", { value: t.id }, t.name ? `${t.name} (${t.id})` : t.id));
    }
  });
  templateRow.append(
    templateSelect,
    button("Load", async () => {
      if (!templateSelect.value) return;
      const doc = await ctl.api.getTemplate(templateSelect.value);
      ctl.loadTemplate(doc);
      ctl.rerender();
    }),
    button("Save current", async () => {
      const { id } = await ctl.api.storeTemplate(buildTemplate(ctl.state));
      alert(`stored as ${id}`);
    }),
  );
  host.append(labeled("Template", templateRow));

  const nameInput = el("input", { type: "text", value: v.name, placeholder: "optional name" });
  nameInput.addEventListener("change", () => ctl.edit(1, { name: nameInput.value }));
  host.append(labeled("Name", nameInput));
  host.append(
    labeled("Planning horizon (days)", numberInput(v.horizonDays, (x) => ctl.edit(1, { horizonDays: x }), { min: 1, max: 3650 })),
    labeled("Target load (0..1]", numberInput(v.targetLoad, (x) => ctl.edit(1, { targetLoad: x }), { step: 0.05, min: 0.05, max: 1 })),
    labeled("Guarantee gender-separable days", checkbox(v.ensureFeasibility, (x) => ctl.edit(1, { ensureFeasibility: x }))),
    labeled("Use combined age & stay-length table", checkbox(v.useJoint, (x) => ctl.edit(1, { useJoint: x }))),
    labeled("Minimum age", numberInput(v.ageMin, (x) => ctl.edit(1, { ageMin: x }), { min: 0, max: 120 })),
    labeled("Maximum age", numberInput(v.ageMax, (x) => ctl.edit(1, { ageMax: x }), { min: 1, max: 120 })),
  );
  const problems = step1Problems(v);
  host.append(problemList(problems), nextButton(ctl, 1, problems));
}

// -- step 2: rooms with live classification ----------------------------------

export function renderStep2(ctl: Controller, host: HTMLElement): void {
  const v = ctl.state.step2;
  const ensure = ctl.state.step1.ensureFeasibility;
  host.append(el("h2", {}, "2. Rooms"));

  const list = el("div", { className: "room-list" });
  v.capacities.forEach((capacity, index) => {
    const row = el("div", { className: "room-row" });
    row.append(
      el("span", {}, `room ${index}`),
      numberInput(
        capacity,
        (x) => {
          const capacities = [...v.capacities];
          capacities[index] = x;
          ctl.edit(2, { capacities, classify: null, classifyEnsure: null });
          ctl.rerender();
        },
        { min: 1, max: 16 },
      ),
      button("remove", () => {
        const capacities = v.capacities.filter((_, i) => i !== index);
        ctl.edit(2, { capacities, classify: null, classifyEnsure: null });
        ctl.rerender();
      }),
    );
    list.append(row);
  });
  host.append(list);
  host.append(
    button("add room", () => {
      ctl.edit(2, { capacities: [...v.capacities, 2], classify: null, classifyEnsure: null });
      ctl.rerender();
    }),
  );

  const badge = el("div", { className: "badge" });
  if (classificationIsFresh(v, ensure) && v.classify) {
    const c = v.classify;
    badge.className = `badge ${c.allowed ? "badge-ok" : "badge-blocked"}`;
    badge.append(
      el("strong", {}, c.family),
      el("span", {}, c.allowed ? (ensure ? " — guarantee available" : " — allowed") : " — blocked"),
      el("p", { className: "note" }, c.note),
    );
    if (!c.allowed && c.suggestions.length > 0) {
      const ul = el("ul", { className: "suggestions" });
      for (const s of c.suggestions) ul.append(el("li", {}, s));
      badge.append(el("p", {}, "Room mixes that keep the guarantee:"), ul);
    }
  } else {
    badge.append(
      button("classify room mix", async () => {
        try {
          const classify = await ctl.api.classify(v.capacities, ensure);
          ctl.edit(2, { classify, classifyEnsure: ensure });
        } catch (error) {
          alert(error instanceof ApiError ? error.message : String(error));
        }
        ctl.rerender();
      }),
    );
  }
  host.append(badge);

  const problems = step2Problems(v, ensure);
  host.append(problemList(problems), nextButton(ctl, 2, problems));
}

// -- distribution pickers (steps 3 and 4) -------------------------------------

function choiceEditor(
  ctl: Controller,
  what: "age" | "los" | "lor",
  tableKind: string,
  current: DistributionChoice,
  onChange: (c: DistributionChoice) => void,
): HTMLElement {
  const box = el("div", { className: "choice-editor" });
  const kindSelect = select(
    [
      { value: "lognormal", label: "log-normal" },
      { value: "uniform", label: "uniform (integers)" },
      ...(what === "lor" ? [] : [{ value: "empirical", label: "ward-shape table" }]),
    ],
    current.kind,
    (kind) => {
      if (kind === "uniform") onChange({ kind: "uniform", low: 1, high: 8 });
      else if (kind === "lognormal") onChange({ kind: "lognormal", mean: 5, std_dev: 2, min: null, max: null });
      else onChange({ kind: "empirical", table: "" });
    },
  );
  box.append(labeled("Distribution", kindSelect));
  if (current.kind === "uniform") {
    box.append(
      labeled("Low", numberInput(current.low, (x) => onChange({ ...current, low: x }))),
      labeled("High", numberInput(current.high, (x) => onChange({ ...current, high: x }))),
    );
  } else if (current.kind === "lognormal") {
    box.append(
      labeled("Mean", numberInput(current.mean, (x) => onChange({ ...current, mean: x }), { step: 0.01 })),
      labeled("Std dev", numberInput(current.std_dev, (x) => onChange({ ...current, std_dev: x }), { step: 0.01 })),
    );
  } else {
    const tableSelect = el("select", {});
    tableSelect.append(el("option", { value: "" }, "— pick a table —"));
    void ctl.api.listTables().then(({ tables }) => {
      for (const t of tables.filter((t) => t.kind === tableKind)) {
        const opt = el("option", { value: t.id }, `${t.id}${t.builtin ? "" : " (uploaded)"}`);
        if (t.id === (current as { table: string }).table) opt.selected = true;
        tableSelect.append(opt);
      }
    });
    tableSelect.addEventListener("change", () => onChange({ kind: "empirical", table: tableSelect.value }));
    box.append(labeled("Table", tableSelect));
    box.append(uploadSlot(ctl, () => ctl.rerender()));
  }
  return box;
}

function uploadSlot(ctl: Controller, done: () => void): HTMLElement {
  const id = el("input", { type: "text", placeholder: "table id (e.g. my_ward)" });
  const file = el("input", { type: "file", accept: ".table,.txt" });
  const btn = button("upload table", async () => {
    const picked = file.files?.[0];
    if (!picked || !id.value) return alert("pick a file and an id first");
    try {
      await ctl.api.uploadTable(id.value, await picked.text());
      done();
    } catch (error) {
      alert(error instanceof ApiError ? error.message : String(error));
    }
  });
  return el("div", { className: "upload-slot" }, id, file, btn);
}

function previewPanel(
  ctl: Controller,
  target: "age" | "los" | "lor",
  choice: DistributionChoice,
): HTMLElement {
  const panel = el("div", { className: "preview" });
  const chart = el("div", { className: "chart" });
  panel.append(
    button("preview 20k draws", async () => {
      try {
        const { buckets, bucket_width } = await ctl.api.preview(
          target,
          choice,
          20_000,
          0,
          ctl.state.step1.ageMin,
          ctl.state.step1.ageMax,
        );
        renderHistogram(chart, buckets, bucket_width);
      } catch (error) {
        chart.textContent = error instanceof ApiError ? error.message : String(error);
      }
    }),
    chart,
  );
  return panel;
}

export function renderStep3(ctl: Controller, host: HTMLElement): void {
  const joint = ctl.state.step1.useJoint;
  host.append(el("h2", {}, joint ? "3. Combined age & stay length" : "3. Age and stay length"));
  const v = ctl.state.step3;
  const problems: string[] = [];
  if (joint) {
    const current = v.joint ?? { kind: "empirical" as const, table: "" };
    host.append(
      choiceEditor(ctl, "age", "joint_age_los", current, (c) => {
        ctl.edit(3, { joint: c });
        ctl.rerender();
      }),
    );
    const heat = el("div", { className: "chart" });
    if (current.kind === "empirical" && current.table) {
      void ctl.api.getTable(current.table).then((detail) => renderHeatmap(heat, detail.cells));
    }
    host.append(heat);
    if (current.kind !== "empirical" || !current.table) problems.push("pick a combined table");
  } else {
    host.append(el("h3", {}, "Age"));
    host.append(
      choiceEditor(ctl, "age", "age_only", v.age, (c) => {
        ctl.edit(3, { age: c });
        ctl.rerender();
      }),
      previewPanel(ctl, "age", v.age),
    );
    host.append(el("h3", {}, "Stay length (days)"));
    host.append(
      choiceEditor(ctl, "los", "los_only", v.los, (c) => {
        ctl.edit(3, { los: c });
        ctl.rerender();
      }),
      previewPanel(ctl, "los", v.los),
    );
    problems.push(...choiceProblems(v.age, "age"), ...choiceProblems(v.los, "stay length"));
  }
  host.append(problemList(problems), nextButton(ctl, 3, problems));
}

export function renderStep4(ctl: Controller, host: HTMLElement): void {
  host.append(el("h2", {}, "4. Registration lead time"));
  const v = ctl.state.step4;
  host.append(
    el("p", { className: "note" }, "Days between registration and admission; emergencies always get 0."),
    choiceEditor(ctl, "lor", "", v.lor, (c) => {
      ctl.edit(4, { lor: c });
      ctl.rerender();
    }),
    previewPanel(ctl, "lor", v.lor),
  );
  const problems = choiceProblems(v.lor, "registration lead");
  host.append(problemList(problems), nextButton(ctl, 4, problems));
}

// -- step 5: the four age-dependent rates -------------------------------------

const RATE_LABELS: Record<RateKey, string> = {
  female: "female patients",
  private: "single-room entitlement",
  emergency: "emergency admissions",
  companion: "accompanying person",
};

export function renderStep5(ctl: Controller, host: HTMLElement): void {
  host.append(el("h2", {}, "5. Age-dependent rates"));
  const v = ctl.state.step5;
  const problems: string[] = [];
  for (const key of Object.keys(RATE_LABELS) as RateKey[]) {
    const spec = v.rates[key];
    const section = el("div", { className: "rate-section" });
    section.append(el("h3", {}, RATE_LABELS[key]));
    const mode = "coefficients" in spec ? "coefficients" : "classes";
    section.append(
      labeled(
        "Specify as",
        select(
          [
            { value: "coefficients", label: "cubic coefficients" },
            { value: "classes", label: "per age class" },
          ],
          mode,
          (m) => {
            const next =
              m === "coefficients"
                ? { coefficients: [0, 0, 0, 0.5] as [number, number, number, number] }
                : { classes: [[25, 0.5], [45, 0.5], [65, 0.5], [85, 0.5]] as [number, number][] };
            ctl.edit(5, { rates: { ...v.rates, [key]: next } });
            ctl.rerender();
          },
        ),
      ),
    );
    if ("coefficients" in spec) {
      const row = el("div", { className: "coeff-row" });
      spec.coefficients.forEach((value, i) => {
        row.append(
          labeled(
            `c${3 - i}`,
            numberInput(
              value,
              (x) => {
                const coefficients = [...spec.coefficients] as [number, number, number, number];
                coefficients[i] = x;
                ctl.edit(5, { rates: { ...v.rates, [key]: { coefficients } } });
              },
              { step: "any" },
            ),
          ),
        );
      });
      section.append(row);
    } else {
      const grid = el("div", { className: "class-grid" });
      spec.classes.forEach(([mid, rate], i) => {
        grid.append(
          labeled(
            `age ${mid}`,
            numberInput(
              rate,
              (x) => {
                const classes = spec.classes.map((pair, j) => (j === i ? [mid, x] : pair)) as [number, number][];
                ctl.edit(5, { rates: { ...v.rates, [key]: { classes } } });
              },
              { step: 0.05, min: 0, max: 1 },
            ),
          ),
        );
      });
      section.append(grid);
      if (spec.classes.length < 4) problems.push(`${key}: needs at least 4 age classes`);
    }
    const curve = el("div", { className: "chart" });
    section.append(
      button("preview fitted curve", async () => {
        try {
          const classes: [number, number][] =
            "classes" in spec
              ? spec.classes
              : ([20, 40, 60, 80, 100] as const).map((x) => {
                  const [c3, c2, c1, c0] = spec.coefficients;
                  const raw = ((c3 * x + c2) * x + c1) * x + c0;
                  return [x, Math.min(1, Math.max(0, raw))] as [number, number];
                });
          const fit = await ctl.api.fitRates(classes);
          renderCurve(curve, fit.curve);
        } catch (error) {
          curve.textContent = error instanceof ApiError ? error.message : String(error);
        }
      }),
      curve,
    );
    host.append(section);
  }
  host.append(problemList(problems), nextButton(ctl, 5, problems));
}

// -- step 6: generate, poll, download ------------------------------------------

export function renderStep6(ctl: Controller, host: HTMLElement): void {
  host.append(el("h2", {}, "6. Generate"));
  const v = ctl.state.step6;
  host.append(
    labeled("Seed", numberInput(v.seed, (x) => ctl.edit(6, { seed: x }))),
    labeled("Instances", numberInput(v.instanceCount, (x) => ctl.edit(6, { instanceCount: x }), { min: 1, max: 100 })),
  );
  const problems = step6Problems(v);
  host.append(problemList(problems));

  const panel = el("div", { className: "job-panel" });
  const statusLine = el("p", { className: "note" }, "not started");
  const chart = el("div", { className: "chart" });
  const actions = el("div", { className: "step-actions" });
  const startBtn = button("Generate", async () => {
    const template: Template = buildTemplate(ctl.state);
    statusLine.textContent = "submitting…";
    try {
      const { job_id } = await ctl.api.startGenerate(template);
      statusLine.textContent = `job ${job_id} running…`;
      const status = await ctl.api.pollJob(job_id);
      if (status.status === "error") {
        statusLine.textContent = `job failed: ${status.error}`;
        return;
      }
      statusLine.textContent = `done; achieved loads ${status.achieved_loads
        .map((x) => x.toFixed(3))
        .join(", ")}`;
      renderLoadBars(chart, status.achieved_loads, ctl.state.step1.targetLoad);
      const link = el("a", { href: ctl.api.archiveUrl(job_id), download: `${job_id}.zip` }, "download archive");
      actions.replaceChildren(link);
    } catch (error) {
      statusLine.textContent = error instanceof ApiError ? `rejected: ${error.message}` : String(error);
    }
  });
  if (problems.length > 0) startBtn.disabled = true;
  panel.append(startBtn, statusLine, chart, actions);
  host.append(panel);
}
