/** Typed client for the /v1 game API. The server is authoritative for all
 * game state; this module holds no forecast logic. */

export type Condition =
  | "GRAPHICS_ONLY"
  | "GRAPHICS_AND_NATURAL"
  | "GRAPHICS_AND_WMO"
  | "NATURAL_ONLY"
  | "WMO_ONLY";

export interface Demographics {
  gender?: string | null;
  education_level?: string | null;
  native_speaker?: boolean | null;
  risk_experience?: boolean | null;
  weather_model_familiarity?: boolean | null;
}

export interface SessionDescriptor {
  session_id: string;
  condition: Condition;
  phase: string;
}

export interface GraphicsData {
  rain_chance_percent: number;
  temperature: { q10: number; q50: number; q90: number };
}

export interface ForecastTextData {
  strategy: "WMO_BASED" | "NATURAL";
  rainfall: string;
  temperature: string;
}

export interface LocationPayload {
  location_id: string;
  graphics?: GraphicsData;
  text?: ForecastTextData;
}

export interface RoundPayload {
  week: number;
  condition: Condition;
  locations: LocationPayload[];
}

export interface DecisionResult {
  week: number;
  rain_occurred: boolean;
  payoff: number;
  balance: number;
  phase: string;
}

export interface NumeracyResult {
  score: number;
  literate: boolean;
  phase: string;
}

export interface SummaryReport {
  session_id: string;
  condition: Condition;
  balance: number;
  payoffs: number[];
  numeracy_score: number | null;
  numeracy_literate: boolean | null;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class GameApi {
  constructor(private baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      let code = "UNKNOWN";
      let message = res.statusText;
      try {
        const doc = await res.json();
        code = doc.code ?? code;
        message = doc.message ?? message;
      } catch {
        // non-JSON error body
      }
      throw new ApiError(res.status, code, message);
    }
    return (await res.json()) as T;
  }

  createSession(demographics?: Demographics): Promise<SessionDescriptor> {
    return this.request("POST", "/v1/sessions", demographics ? { demographics } : {});
  }

  getRound(sessionId: string, week: number): Promise<RoundPayload> {
    return this.request("GET", `/v1/sessions/${sessionId}/rounds/${week}`);
  }

  postDecision(
    sessionId: string,
    week: number,
    chosenLocation: string,
    confidence: number,
  ): Promise<DecisionResult> {
    return this.request("POST", `/v1/sessions/${sessionId}/decisions`, {
      week,
      chosen_location: chosenLocation,
      confidence,
    });
  }

  postNumeracy(
    sessionId: string,
    answers: { question_id: string; answer: string }[],
  ): Promise<NumeracyResult> {
    return this.request("POST", `/v1/sessions/${sessionId}/numeracy`, { answers });
  }

  getSummary(sessionId: string): Promise<SummaryReport> {
    return this.request("GET", `/v1/sessions/${sessionId}/summary`);
  }
}
