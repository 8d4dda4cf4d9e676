// End-to-end tests against a live service process.  Covers the wizard
// gating rules and the byte-parity contract between the HTTP job files and
// the CLI output for the same template and seed.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import {
  buildTemplate,
  completeStep,
  editStep,
  newWizard,
  step2Problems,
  STEP_IDS,
} from "../src/state.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
let workDir: string;
const api = new ApiClient(BASE);

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "pragen-ui-"));
  service = spawn(
    "python3",
    ["-m", "pragen.service", "--port", String(PORT), "--data-dir", join(workDir, "data")],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      await api.health();
      break;
    } catch {
      if (Date.now() > deadline) throw new Error("service did not come up");
      await new Promise((resolve) => setTimeout(resolve, 200));
    }
  }
}, 45_000);

afterAll(() => {
  service?.kill();
  rmSync(workDir, { recursive: true, force: true });
});

function wizardTemplate(seed: number) {
  let state = newWizard();
  state = editStep(state, 1, { horizonDays: 10, targetLoad: 0.8 });
  state = editStep(state, 2, { capacities: [2, 2, 4], classify: null, classifyEnsure: null });
  state = editStep(state, 6, { seed, instanceCount: 2 });
  return state;
}

describe("wizard gating through the service", () => {
  it("blocks {3,5,7,11} with suggestions when the guarantee is on", async () => {
    const verdict = await api.classify([3, 5, 7, 11], true);
    expect(verdict.family).toBe("SubsetSumOracle");
    expect(verdict.allowed).toBe(false);
    expect(verdict.suggestions.length).toBeGreaterThan(0);
    const problems = step2Problems(
      { capacities: [3, 5, 7, 11], classify: verdict, classifyEnsure: true },
      true,
    );
    expect(problems.length).toBeGreaterThan(0);
  });

  it("allows {2,2,4} with a closed-form family", async () => {
    const verdict = await api.classify([2, 2, 4], true);
    expect(verdict.allowed).toBe(true);
    expect(verdict.family).toBe("EvenPair");
    const problems = step2Problems(
      { capacities: [2, 2, 4], classify: verdict, classifyEnsure: true },
      true,
    );
    expect(problems).toEqual([]);
  });

  it("allows oracle mixes once the guarantee is off", async () => {
    const verdict = await api.classify([3, 5, 7, 11], false);
    expect(verdict.allowed).toBe(true);
  });
});

describe("end-to-end wizard run", () => {
  it("completes every step, generates, and the files pass validation", async () => {
    let state = wizardTemplate(21);
    const verdict = await api.classify(state.step2.capacities, state.step1.ensureFeasibility);
    state = editStep(state, 2, { classify: verdict, classifyEnsure: state.step1.ensureFeasibility });
    for (const step of STEP_IDS) state = completeStep(state, step);
    const template = buildTemplate(state);

    const stored = await api.storeTemplate(template);
    expect((await api.getTemplate(stored.id))).toEqual(template);

    const { job_id } = await api.startGenerate(template);
    const status = await api.pollJob(job_id);
    expect(status.status).toBe("done");
    expect(status.achieved_loads).toHaveLength(2);
    for (const load of status.achieved_loads) {
      expect(load).toBeLessThanOrEqual(template.target_load + 1e-9);
    }

    const archive = await fetch(api.archiveUrl(job_id));
    expect(archive.status).toBe(200);
    expect((await archive.arrayBuffer()).byteLength).toBeGreaterThan(200);

    for (let index = 0; index < 2; index += 1) {
      const text = await api.fetchInstanceFile(job_id, index);
      const path = join(workDir, `ui_instance_${index}.json`);
      writeFileSync(path, text);
      const audit = spawnSync(
        "python3",
        ["-m", "pragen.cli", "validate", path, "--feasibility"],
        { encoding: "utf-8" },
      );
      expect(audit.status, audit.stdout + audit.stderr).toBe(0);
    }
  }, 120_000);

  it("produces byte-identical instances to the CLI for the same config", async () => {
    let state = wizardTemplate(77);
    const verdict = await api.classify(state.step2.capacities, state.step1.ensureFeasibility);
    state = editStep(state, 2, { classify: verdict, classifyEnsure: state.step1.ensureFeasibility });
    for (const step of STEP_IDS) state = completeStep(state, step);
    const template = buildTemplate(state);

    const templatePath = join(workDir, "parity_template.json");
    writeFileSync(templatePath, JSON.stringify(template));
    const outDir = join(workDir, "cli_out");
    const cli = spawnSync(
      "python3",
      ["-m", "pragen.cli", "generate", templatePath, "--out", outDir],
      { encoding: "utf-8" },
    );
    expect(cli.status, cli.stdout + cli.stderr).toBe(0);

    const { job_id } = await api.startGenerate(template);
    const status = await api.pollJob(job_id);
    expect(status.status).toBe("done");
    for (let index = 0; index < 2; index += 1) {
      const viaService = await api.fetchInstanceFile(job_id, index);
      const viaCli = readFileSync(join(outDir, `instance_${index}.json`), "utf-8");
      expect(viaService).toBe(viaCli);
    }
  }, 120_000);
});
