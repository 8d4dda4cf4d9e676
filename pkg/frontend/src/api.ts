// Thin typed client for the generation service.

import {
  ClassifyResponse,
  DistributionChoice,
  FitResponse,
  JobStatus,
  PreviewResponse,
  TableDetail,
  TableInfo,
  Template,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  constructor(private baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail = `${response.status} ${response.statusText}`;
      try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
        else if (body) detail = JSON.stringify(body.detail ?? body);
      } catch {
        // keep the status line
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<{ status: string }> {
    return this.request("/health");
  }

  classify(capacities: number[], ensureFeasibility: boolean): Promise<ClassifyResponse> {
    return this.post("/ward/classify", {
      capacities,
      ensure_feasibility: ensureFeasibility,
    });
  }

  storeTemplate(template: Template): Promise<{ id: string }> {
    return this.post("/templates", template);
  }

  listTemplates(): Promise<{ templates: { id: string; name: string | null }[] }> {
    return this.request("/templates");
  }

  getTemplate(id: string): Promise<Template> {
    return this.request(`/templates/${id}`);
  }

  listTables(): Promise<{ tables: TableInfo[] }> {
    return this.request("/tables");
  }

  getTable(id: string): Promise<TableDetail> {
    return this.request(`/tables/${id}`);
  }

  uploadTable(id: string, content: string): Promise<{ id: string }> {
    return this.post("/tables", { id, content });
  }

  preview(
    target: "age" | "los" | "lor",
    choice: DistributionChoice,
    n: number,
    seed = 0,
    ageMin = 18,
    ageMax = 100,
  ): Promise<PreviewResponse> {
    return this.post("/distributions/preview", {
      target,
      choice,
      n,
      seed,
      age_min: ageMin,
      age_max: ageMax,
    });
  }

  fitRates(classes: [number, number][]): Promise<FitResponse> {
    return this.post("/rates/fit", { classes });
  }

  startGenerate(template: Template): Promise<{ job_id: string }> {
    return this.post("/generate", template);
  }

  jobStatus(jobId: string): Promise<JobStatus> {
    return this.request(`/generate/${jobId}`);
  }

  async pollJob(jobId: string, intervalMs = 300, timeoutMs = 120_000): Promise<JobStatus> {
    const deadline = Date.now() + timeoutMs;
    let wait = intervalMs;
    for (;;) {
      const status = await this.jobStatus(jobId);
      if (status.status !== "running") return status;
      if (Date.now() > deadline) throw new Error("generation timed out");
      await new Promise((resolve) => setTimeout(resolve, wait));
      wait = Math.min(wait * 1.5, 3000);
    }
  }

  archiveUrl(jobId: string): string {
    return `${this.baseUrl}/generate/${jobId}/archive`;
  }

  async fetchInstanceFile(jobId: string, index: number): Promise<string> {
    const response = await fetch(`${this.baseUrl}/generate/${jobId}/files/${index}`);
    if (!response.ok) throw new ApiError(response.status, `file ${index} unavailable`);
    return response.text();
  }
}
