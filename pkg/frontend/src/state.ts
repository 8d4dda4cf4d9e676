// Wizard state machine: six ordered steps, each holding its form values and
// a validation flag.  A step is reachable only while every earlier step is
// valid, and editing step k drops the validation of every later step so
// stale downstream choices can never ride along.

import {
  ClassifyResponse,
  DEFAULT_AGE,
  DEFAULT_LOR,
  DEFAULT_LOS,
  DEFAULT_RATES,
  DistributionChoice,
  RateKey,
  RateSpec,
  Template,
} from "./types.js";

export type StepId = 1 | 2 | 3 | 4 | 5 | 6;

export const STEP_IDS: StepId[] = [1, 2, 3, 4, 5, 6];

export interface Step1Values {
  name: string;
  horizonDays: number;
  targetLoad: number;
  ensureFeasibility: boolean;
  useJoint: boolean;
  ageMin: number;
  ageMax: number;
}

export interface Step2Values {
  capacities: number[];
  classify: ClassifyResponse | null;
  // guarantee flag the stored classification was fetched under; a mismatch
  // with step 1's current toggle means the verdict is stale
  classifyEnsure: boolean | null;
}

export interface Step3Values {
  age: DistributionChoice;
  los: DistributionChoice;
  joint: DistributionChoice | null;
}

export interface Step4Values {
  lor: DistributionChoice;
}

export interface Step5Values {
  rates: Record<RateKey, RateSpec>;
}

export interface Step6Values {
  seed: number;
  instanceCount: number;
}

export interface WizardState {
  step1: Step1Values;
  step2: Step2Values;
  step3: Step3Values;
  step4: Step4Values;
  step5: Step5Values;
  step6: Step6Values;
  valid: Record<StepId, boolean>;
}

export function newWizard(): WizardState {
  return {
    step1: {
      name: "",
      horizonDays: 28,
      targetLoad: 0.8,
      ensureFeasibility: true,
      useJoint: false,
      ageMin: 18,
      ageMax: 100,
    },
    step2: { capacities: [1, 2, 2, 2, 4], classify: null, classifyEnsure: null },
    step3: { age: DEFAULT_AGE, los: DEFAULT_LOS, joint: null },
    step4: { lor: DEFAULT_LOR },
    step5: { rates: { ...DEFAULT_RATES } },
    step6: { seed: 0, instanceCount: 1 },
    valid: { 1: false, 2: false, 3: false, 4: false, 5: false, 6: false },
  };
}

export function isUnlocked(state: WizardState, step: StepId): boolean {
  for (const earlier of STEP_IDS) {
    if (earlier >= step) break;
    if (!state.valid[earlier]) return false;
  }
  return true;
}

export function firstOpenStep(state: WizardState): StepId {
  for (const step of STEP_IDS) {
    if (!state.valid[step]) return step;
  }
  return 6;
}

function relockAfter(valid: Record<StepId, boolean>, step: StepId): Record<StepId, boolean> {
  const next = { ...valid };
  for (const later of STEP_IDS) {
    if (later >= step) next[later] = false;
  }
  return next;
}

/** Replace one step's values; the step and everything after it re-lock. */
export function editStep<K extends StepId>(
  state: WizardState,
  step: K,
  values: Partial<WizardState[`step${K}`]>,
): WizardState {
  const key = `step${step}` as const;
  return {
    ...state,
    [key]: { ...state[key], ...values },
    valid: relockAfter(state.valid, step),
  };
}

/** Mark a step validated without touching later steps' values. */
export function completeStep(state: WizardState, step: StepId): WizardState {
  if (!isUnlocked(state, step)) {
    throw new Error(`step ${step} is locked; finish earlier steps first`);
  }
  return { ...state, valid: { ...state.valid, [step]: true } };
}

// ---------------------------------------------------------------------------
// Client-side mirrors of the service's validation.  The service stays
// authoritative; these only keep obviously-broken values from being sent.

export function step1Problems(v: Step1Values): string[] {
  const problems: string[] = [];
  if (!Number.isInteger(v.horizonDays) || v.horizonDays < 1) {
    problems.push("horizon must be a positive number of days");
  }
  if (v.horizonDays > 3650) problems.push("horizon is capped at 3650 days");
  if (!(v.targetLoad > 0 && v.targetLoad <= 1)) {
    problems.push("target load must be in (0, 1]");
  }
  if (!(v.ageMin >= 0 && v.ageMin < v.ageMax)) {
    problems.push("age bounds must satisfy 0 <= min < max");
  }
  return problems;
}

export function classificationIsFresh(v: Step2Values, ensureFeasibility: boolean): boolean {
  return v.classify !== null && v.classifyEnsure === ensureFeasibility;
}

export function step2Problems(v: Step2Values, ensureFeasibility: boolean): string[] {
  const problems: string[] = [];
  if (v.capacities.length === 0) problems.push("add at least one room");
  if (v.capacities.some((c) => !Number.isInteger(c) || c < 1)) {
    problems.push("room capacities must be positive integers");
  }
  if (!classificationIsFresh(v, ensureFeasibility)) {
    problems.push("room mix not classified yet");
  } else if (ensureFeasibility && !v.classify!.allowed) {
    problems.push("this room mix cannot carry the feasibility guarantee");
  }
  return problems;
}

export function choiceProblems(choice: DistributionChoice, what: string): string[] {
  if (choice.kind === "uniform") {
    if (!Number.isInteger(choice.low) || !Number.isInteger(choice.high) || choice.low > choice.high) {
      return [`${what}: uniform bounds must be integers with low <= high`];
    }
  } else if (choice.kind === "lognormal") {
    if (!(choice.mean > 0) || !(choice.std_dev > 0)) {
      return [`${what}: log-normal mean and std_dev must be > 0`];
    }
  } else if (!choice.table) {
    return [`${what}: pick a table`];
  }
  return [];
}

export function step6Problems(v: Step6Values): string[] {
  const problems: string[] = [];
  if (!Number.isInteger(v.seed)) problems.push("seed must be an integer");
  if (!Number.isInteger(v.instanceCount) || v.instanceCount < 1 || v.instanceCount > 100) {
    problems.push("instance count must be in 1..100");
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Template round-trip.

export function buildTemplate(state: WizardState): Template {
  const s1 = state.step1;
  const template: Template = {
    schema_version: 1,
    ward: state.step2.capacities.map((capacity, id) => ({ id, capacity })),
    horizon: { days: s1.horizonDays },
    target_load: s1.targetLoad,
    ensure_feasibility: s1.ensureFeasibility,
    age: s1.useJoint ? null : state.step3.age,
    los: s1.useJoint ? null : state.step3.los,
    joint_age_los: s1.useJoint ? state.step3.joint : null,
    lor: state.step4.lor,
    rates: state.step5.rates,
    age_min: s1.ageMin,
    age_max: s1.ageMax,
    seed: state.step6.seed,
    instance_count: state.step6.instanceCount,
  };
  if (s1.name) template.name = s1.name;
  return template;
}

/** Pre-fill every step from a stored template; validation starts over. */
export function loadTemplate(doc: Template): WizardState {
  const state = newWizard();
  state.step1 = {
    name: doc.name ?? "",
    horizonDays: doc.horizon.days,
    targetLoad: doc.target_load,
    ensureFeasibility: doc.ensure_feasibility,
    useJoint: doc.joint_age_los !== null,
    ageMin: doc.age_min,
    ageMax: doc.age_max,
  };
  state.step2 = {
    capacities: [...doc.ward].sort((a, b) => a.id - b.id).map((r) => r.capacity),
    classify: null,
    classifyEnsure: null,
  };
  state.step3 = {
    age: doc.age ?? DEFAULT_AGE,
    los: doc.los ?? DEFAULT_LOS,
    joint: doc.joint_age_los,
  };
  state.step4 = { lor: doc.lor };
  state.step5 = { rates: doc.rates };
  state.step6 = { seed: doc.seed, instanceCount: doc.instance_count };
  return state;
}

/** Stable stringify (sorted object keys) so template comparisons and
 * digests do not depend on insertion order. */
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(canonicalJson).join(",")}]`;
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .filter(([, v]) => v !== undefined)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([k, v]) => `${JSON.stringify(k)}:${canonicalJson(v)}`);
    return `{${entries.join(",")}}`;
  }
  return JSON.stringify(value);
}
