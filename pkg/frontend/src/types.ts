// Shared payload shapes for the wizard and the HTTP API.

export type DistributionKind = "uniform" | "lognormal" | "empirical";

export interface UniformChoice {
  kind: "uniform";
  low: number;
  high: number;
}

export interface LogNormalChoice {
  kind: "lognormal";
  mean: number;
  std_dev: number;
  min: number | null;
  max: number | null;
}

export interface EmpiricalChoice {
  kind: "empirical";
  table: string;
}

export type DistributionChoice = UniformChoice | LogNormalChoice | EmpiricalChoice;

export interface RateCoefficients {
  coefficients: [number, number, number, number];
}

export interface RateClasses {
  classes: [number, number][];
}

export type RateSpec = RateCoefficients | RateClasses;

export type RateKey = "female" | "private" | "emergency" | "companion";

export interface RoomEntry {
  id: number;
  capacity: number;
}

export interface Template {
  schema_version: 1;
  name?: string;
  ward: RoomEntry[];
  horizon: { days: number };
  target_load: number;
  ensure_feasibility: boolean;
  age: DistributionChoice | null;
  los: DistributionChoice | null;
  joint_age_los: DistributionChoice | null;
  lor: DistributionChoice;
  rates: Record<RateKey, RateSpec>;
  age_min: number;
  age_max: number;
  seed: number;
  instance_count: number;
}

export interface ClassifyResponse {
  family: string;
  params: Record<string, unknown>;
  allowed: boolean;
  suggestions: string[];
  note: string;
}

export interface PreviewResponse {
  bucket_width: number;
  buckets: [number, number][];
}

export interface FitResponse {
  coefficients: [number, number, number, number];
  residual: number;
  curve: [number, number][];
}

export interface TableInfo {
  id: string;
  builtin: boolean;
  kind: "age_only" | "los_only" | "joint_age_los";
}

export interface TableDetail extends TableInfo {
  age_min: number;
  age_max: number;
  los_min: number;
  los_max: number;
  age_class_width: number;
  cells: number[][];
}

export interface JobStatus {
  job_id: string;
  status: "running" | "done" | "error";
  error: string | null;
  instance_count: number;
  completed: number;
  achieved_loads: number[];
}

export const DEFAULT_AGE: LogNormalChoice = {
  kind: "lognormal",
  mean: 61.5594489311164,
  std_dev: 17.495923251794,
  min: null,
  max: null,
};

export const DEFAULT_LOS: LogNormalChoice = {
  kind: "lognormal",
  mean: 4.02136785471962,
  std_dev: 1.24578691452702,
  min: null,
  max: null,
};

export const DEFAULT_LOR: LogNormalChoice = {
  kind: "lognormal",
  mean: 6.11783570735678,
  std_dev: 1.5118524126249,
  min: null,
  max: null,
};

export const DEFAULT_RATES: Record<RateKey, RateSpec> = {
  female: { coefficients: [2.58204297e-6, -3.16813273e-4, 8.9469195e-3, 0.438171831286241] },
  private: { coefficients: [1.61572557e-6, 2.86972783e-4, 1.34752628e-2, 0.271661363] },
  emergency: { coefficients: [2.21895335e-6, 2.9891084e-4, 1.01995134e-2, 0.279651026] },
  companion: { coefficients: [5.65061344e-8, 2.83196514e-5, 3.01802321e-3, 0.0977778296] },
};
