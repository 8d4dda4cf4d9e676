import { describe, expect, it } from "vitest";

import {
  STEP_IDS,
  buildTemplate,
  canonicalJson,
  classificationIsFresh,
  completeStep,
  editStep,
  firstOpenStep,
  isUnlocked,
  loadTemplate,
  newWizard,
  step1Problems,
  step2Problems,
  step6Problems,
} from "../src/state.js";
import { ClassifyResponse } from "../src/types.js";

const okClassify: ClassifyResponse = {
  family: "EvenPair",
  params: { c: 2 },
  allowed: true,
  suggestions: [],
  note: "",
};

function fullyValidated() {
  let state = newWizard();
  state = editStep(state, 2, { classify: okClassify, classifyEnsure: true });
  for (const step of STEP_IDS) state = completeStep(state, step);
  return state;
}

describe("step locking", () => {
  it("only step 1 is reachable at the start", () => {
    const state = newWizard();
    expect(isUnlocked(state, 1)).toBe(true);
    for (const step of [2, 3, 4, 5, 6] as const) {
      expect(isUnlocked(state, step)).toBe(false);
    }
  });

  it("a step unlocks only when every earlier step validates", () => {
    let state = newWizard();
    state = completeStep(state, 1);
    expect(isUnlocked(state, 2)).toBe(true);
    expect(isUnlocked(state, 3)).toBe(false);
    state = completeStep(state, 2);
    expect(isUnlocked(state, 3)).toBe(true);
  });

  it("completing a locked step throws", () => {
    expect(() => completeStep(newWizard(), 4)).toThrow(/locked/);
  });

  it("editing step k re-locks every later step", () => {
    let state = fullyValidated();
    expect(firstOpenStep(state)).toBe(6);
    state = editStep(state, 2, { capacities: [3, 5, 7, 11], classify: null, classifyEnsure: null });
    expect(state.valid[1]).toBe(true);
    for (const step of [2, 3, 4, 5, 6] as const) {
      expect(state.valid[step]).toBe(false);
    }
    expect(isUnlocked(state, 3)).toBe(false);
  });

  it("editing step 1 re-locks everything downstream", () => {
    let state = fullyValidated();
    state = editStep(state, 1, { targetLoad: 0.9 });
    expect(firstOpenStep(state)).toBe(1);
  });
});

describe("client-side validation mirrors", () => {
  it("flags a zero horizon", () => {
    const v = { ...newWizard().step1, horizonDays: 0 };
    expect(step1Problems(v).join(" ")).toMatch(/horizon/);
  });

  it("flags an out-of-range target load", () => {
    const v = { ...newWizard().step1, targetLoad: 1.5 };
    expect(step1Problems(v).join(" ")).toMatch(/target load/);
  });

  it("blocks an oracle-only room mix when the guarantee is on", () => {
    const blocked: ClassifyResponse = {
      family: "SubsetSumOracle",
      params: {},
      allowed: false,
      suggestions: ["all rooms of one size c"],
      note: "",
    };
    const values = { capacities: [3, 5, 7, 11], classify: blocked, classifyEnsure: true };
    expect(step2Problems(values, true).join(" ")).toMatch(/guarantee/);
    // with the gate off the verdict must be re-fetched, not reused
    expect(step2Problems(values, false).join(" ")).toMatch(/classified/);
  });

  it("requires classification before continuing", () => {
    const values = { capacities: [2, 2], classify: null, classifyEnsure: null };
    expect(step2Problems(values, true).join(" ")).toMatch(/classified/);
  });

  it("toggling the guarantee after classification makes the verdict stale", () => {
    const values = { capacities: [3, 5, 7, 11], classify: okClassify, classifyEnsure: false };
    expect(classificationIsFresh(values, false)).toBe(true);
    expect(classificationIsFresh(values, true)).toBe(false);
    expect(step2Problems(values, true).join(" ")).toMatch(/classified/);
  });

  it("bounds the instance count", () => {
    expect(step6Problems({ seed: 1, instanceCount: 500 }).join(" ")).toMatch(/1\.\.100/);
    expect(step6Problems({ seed: 1, instanceCount: 5 })).toEqual([]);
  });
});

describe("template round-trip", () => {
  it("load then build reproduces the identical canonical document", () => {
    const state = fullyValidated();
    const doc = buildTemplate(
      editStep(state, 1, { name: "demo ward", useJoint: false }),
    );
    const rebuilt = buildTemplate(loadTemplate(doc));
    expect(canonicalJson(rebuilt)).toBe(canonicalJson(doc));
  });

  it("joint mode nulls the independent choices", () => {
    let state = fullyValidated();
    state = editStep(state, 1, { useJoint: true });
    state = editStep(state, 3, { joint: { kind: "empirical", table: "joint_type_1" } });
    const doc = buildTemplate(state);
    expect(doc.age).toBeNull();
    expect(doc.los).toBeNull();
    expect(doc.joint_age_los).toEqual({ kind: "empirical", table: "joint_type_1" });
    const rebuilt = buildTemplate(loadTemplate(doc));
    expect(canonicalJson(rebuilt)).toBe(canonicalJson(doc));
  });

  it("ward rooms keep positional ids", () => {
    const doc = buildTemplate(fullyValidated());
    expect(doc.ward).toEqual([
      { id: 0, capacity: 1 },
      { id: 1, capacity: 2 },
      { id: 2, capacity: 2 },
      { id: 3, capacity: 2 },
      { id: 4, capacity: 4 },
    ]);
  });

  it("canonicalJson sorts keys recursively", () => {
    expect(canonicalJson({ b: 1, a: { d: 2, c: [3, { f: 4, e: 5 }] } })).toBe(
      '{"a":{"c":[3,{"e":5,"f":4}],"d":2},"b":1}',
    );
  });
});
