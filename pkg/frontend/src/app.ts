/** Single-page game flow with server-authoritative state.
 *
 * Every mutation awaits the API before the view advances; the client keeps
 * no forecast logic and renders only what the round payload contains, so
 * text-only conditions can never leak numeric probabilities.
 */

import {
  Condition,
  DecisionResult,
  Demographics,
  GameApi,
  RoundPayload,
} from "./api.js";
import { renderRainfallGraphic, renderTemperatureGraphic } from "./charts.js";
import { NUMERACY_BANK, NUMERACY_START, nextQuestion } from "./numeracy.js";

type Screen =
  | "demographics"
  | "numeracy"
  | "round"
  | "feedback"
  | "summary";

export class WeatherGameApp {
  private api: GameApi;
  private sessionId: string | null = null;
  private condition: Condition | null = null;
  private week = 1;

  // round-screen selection state (UI-only)
  private pendingLocation: string | null = null;
  private pendingConfidence: number | null = null;

  // numeracy progress
  private numeracyCurrent = NUMERACY_START;
  private numeracyAnswers: { question_id: string; answer: string }[] = [];

  /** Last navigation triggered by a DOM event; tests await this. */
  nav: Promise<void> = Promise.resolve();

  constructor(
    private root: HTMLElement,
    baseUrl: string,
  ) {
    this.api = new GameApi(baseUrl);
  }

  get screen(): Screen {
    return (this.root.dataset.screen as Screen) ?? "demographics";
  }

  get session(): string | null {
    return this.sessionId;
  }

  get assignedCondition(): Condition | null {
    return this.condition;
  }

  start(): void {
    this.renderDemographics();
  }

  // --- demographics ---------------------------------------------------------

  private renderDemographics(): void {
    this.root.dataset.screen = "demographics";
    this.root.innerHTML = `
      <h1>The Weather Game</h1>
      <p>Send the ice-cream vendor to the better of two locations each week.
         First, a few optional questions about you.</p>
      <form id="demographics-form">
        <label>Gender
          <select name="gender">
            <option value="">Prefer not to say</option>
            <option value="female">Female</option>
            <option value="male">Male</option>
            <option value="other">Other</option>
          </select>
        </label>
        <label>Education
          <select name="education_level">
            <option value="">Prefer not to say</option>
            <option value="secondary">Secondary</option>
            <option value="bachelor">Bachelor's degree</option>
            <option value="postgraduate">Postgraduate degree</option>
          </select>
        </label>
        <label><input type="checkbox" name="native_speaker"> Native English speaker</label>
        <label><input type="checkbox" name="risk_experience"> I make risk-based decisions in my work</label>
        <label><input type="checkbox" name="weather_model_familiarity"> I am familiar with weather models</label>
        <button type="submit" id="start-button">Start</button>
      </form>
    `;
    const form = this.root.querySelector<HTMLFormElement>("#demographics-form")!;
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      this.nav = this.submitDemographics();
    });
  }

  async submitDemographics(): Promise<void> {
    const form = this.root.querySelector<HTMLFormElement>("#demographics-form")!;
    const data = new FormData(form);
    const demographics: Demographics = {
      gender: (data.get("gender") as string) || null,
      education_level: (data.get("education_level") as string) || null,
      native_speaker: data.has("native_speaker"),
      risk_experience: data.has("risk_experience"),
      weather_model_familiarity: data.has("weather_model_familiarity"),
    };
    const desc = await this.api.createSession(demographics);
    this.sessionId = desc.session_id;
    this.condition = desc.condition;
    this.renderNumeracy();
  }

  // --- numeracy --------------------------------------------------------------

  private renderNumeracy(): void {
    this.root.dataset.screen = "numeracy";
    const question = NUMERACY_BANK[this.numeracyCurrent];
    const n = this.numeracyAnswers.length + 1;
    this.root.innerHTML = `
      <h2>Risk literacy (${n} of 4)</h2>
      <p id="numeracy-prompt">${question.prompt}</p>
      <form id="numeracy-form">
        <input name="answer" id="numeracy-answer" inputmode="numeric" autocomplete="off" required>
        <button type="submit">Next</button>
      </form>
    `;
    this.root.querySelector<HTMLFormElement>("#numeracy-form")!.addEventListener(
      "submit",
      (ev) => {
        ev.preventDefault();
        this.nav = this.submitNumeracyAnswer();
      },
    );
  }

  async submitNumeracyAnswer(): Promise<void> {
    const input = this.root.querySelector<HTMLInputElement>("#numeracy-answer")!;
    const given = input.value.trim();
    if (!given) return;
    const question = NUMERACY_BANK[this.numeracyCurrent];
    this.numeracyAnswers.push({ question_id: question.id, answer: given });
    const next = nextQuestion(question, given);
    if (next !== null) {
      this.numeracyCurrent = next;
      this.renderNumeracy();
      return;
    }
    await this.api.postNumeracy(this.sessionId!, this.numeracyAnswers);
    this.week = 1;
    await this.showRound();
  }

  // --- rounds ----------------------------------------------------------------

  async showRound(): Promise<void> {
    const payload = await this.api.getRound(this.sessionId!, this.week);
    this.renderRound(payload);
  }

  private renderRound(payload: RoundPayload): void {
    this.root.dataset.screen = "round";
    this.pendingLocation = null;
    this.pendingConfidence = null;
    this.root.innerHTML = `
      <h2>Week ${payload.week} of 4</h2>
      <p>Where should the ice-cream vendor go?</p>
      <div id="locations"></div>
      <fieldset id="confidence">
        <legend>How confident are you? (1 = not at all, 10 = completely)</legend>
        <div id="confidence-scale" role="radiogroup" aria-label="Confidence"></div>
      </fieldset>
      <button id="submit-decision" disabled>Submit decision</button>
    `;

    const locations = this.root.querySelector<HTMLElement>("#locations")!;
    for (const loc of payload.locations) {
      const card = document.createElement("section");
      card.className = "location-card";
      card.dataset.location = loc.location_id;

      const title = document.createElement("h3");
      title.textContent = `Location ${loc.location_id}`;
      card.appendChild(title);

      if (loc.graphics) {
        const g = document.createElement("div");
        g.className = "graphics";
        g.appendChild(renderRainfallGraphic(loc.graphics.rain_chance_percent, loc.location_id));
        g.appendChild(
          renderTemperatureGraphic(
            loc.graphics.temperature.q10,
            loc.graphics.temperature.q50,
            loc.graphics.temperature.q90,
          ),
        );
        card.appendChild(g);
      }
      if (loc.text) {
        const t = document.createElement("div");
        t.className = "forecast-text";
        const rain = document.createElement("p");
        rain.textContent = loc.text.rainfall;
        const temp = document.createElement("p");
        temp.textContent = loc.text.temperature;
        t.append(rain, temp);
        card.appendChild(t);
      }

      const choose = document.createElement("button");
      choose.className = "choose-location";
      choose.textContent = `Choose ${loc.location_id}`;
      choose.addEventListener("click", () => this.selectLocation(loc.location_id));
      card.appendChild(choose);
      locations.appendChild(card);
    }

    const scale = this.root.querySelector<HTMLElement>("#confidence-scale")!;
    for (let c = 1; c <= 10; c++) {
      const btn = document.createElement("button");
      btn.type = "button";
      btn.className = "confidence-option";
      btn.setAttribute("role", "radio");
      btn.setAttribute("aria-checked", "false");
      btn.dataset.value = String(c);
      btn.textContent = String(c);
      btn.addEventListener("click", () => this.selectConfidence(c));
      scale.appendChild(btn);
    }

    this.root.querySelector<HTMLButtonElement>("#submit-decision")!.addEventListener(
      "click",
      () => {
        this.nav = this.submitDecision();
      },
    );
  }

  selectLocation(locationId: string): void {
    this.pendingLocation = locationId;
    this.root.querySelectorAll<HTMLElement>(".location-card").forEach((card) => {
      card.classList.toggle("selected", card.dataset.location === locationId);
    });
    this.updateSubmitState();
  }

  selectConfidence(value: number): void {
    this.pendingConfidence = value;
    this.root.querySelectorAll<HTMLElement>(".confidence-option").forEach((btn) => {
      const on = btn.dataset.value === String(value);
      btn.classList.toggle("selected", on);
      btn.setAttribute("aria-checked", String(on));
    });
    this.updateSubmitState();
  }

  private updateSubmitState(): void {
    const button = this.root.querySelector<HTMLButtonElement>("#submit-decision");
    if (button) {
      button.disabled = this.pendingLocation === null || this.pendingConfidence === null;
    }
  }

  async submitDecision(): Promise<void> {
    if (this.pendingLocation === null || this.pendingConfidence === null) return;
    const result = await this.api.postDecision(
      this.sessionId!,
      this.week,
      this.pendingLocation,
      this.pendingConfidence,
    );
    this.renderFeedback(result);
  }

  // --- feedback and summary --------------------------------------------------

  private renderFeedback(result: DecisionResult): void {
    this.root.dataset.screen = "feedback";
    const sign = result.payoff >= 0 ? "positive" : "negative";
    const payoffText = `${result.payoff >= 0 ? "+" : ""}${result.payoff}`;
    this.root.innerHTML = `
      <h2>Week ${result.week} result</h2>
      <p id="rain-result">${result.rain_occurred ? "It rained." : "It did not rain."}</p>
      <p id="payoff" class="${sign}">${payoffText}</p>
      <p id="balance">Balance: ${result.balance}</p>
      <button id="continue">${result.phase === "SUMMARY" ? "See final score" : "Next week"}</button>
    `;
    this.root.querySelector<HTMLButtonElement>("#continue")!.addEventListener("click", () => {
      if (result.phase === "SUMMARY") {
        this.nav = this.showSummary();
      } else {
        this.week += 1;
        this.nav = this.showRound();
      }
    });
  }

  async showSummary(): Promise<void> {
    const report = await this.api.getSummary(this.sessionId!);
    this.root.dataset.screen = "summary";
    this.root.innerHTML = `
      <h2>Game over</h2>
      <p id="final-balance">Final balance: ${report.balance}</p>
      <p id="numeracy-score">Risk literacy score: ${report.numeracy_score ?? "-"} / 4</p>
      <ul id="round-payoffs">
        ${report.payoffs.map((p, i) => `<li>Week ${i + 1}: ${p >= 0 ? "+" : ""}${p}</li>`).join("")}
      </ul>
    `;
  }
}
