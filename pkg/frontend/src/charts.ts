/** Chart components drawn purely from structured payload fields. */

export function renderRainfallGraphic(percent: number, locationLabel: string): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "rain-graphic";
  wrap.setAttribute("role", "img");
  wrap.setAttribute("aria-label", `Chance of rain at location ${locationLabel}: ${percent}%`);

  const label = document.createElement("div");
  label.className = "rain-label";
  label.textContent = `Chance of rain: ${percent}%`;

  const track = document.createElement("div");
  track.className = "rain-bar-track";
  const bar = document.createElement("div");
  bar.className = "rain-bar";
  bar.style.width = `${percent}%`;
  bar.dataset.percent = String(percent);
  track.appendChild(bar);

  wrap.append(label, track);
  return wrap;
}

/** Uncertainty band from q10 to q90 with a marker at q50, on a fixed
 * -30..50°C axis. */
export function renderTemperatureGraphic(q10: number, q50: number, q90: number): SVGSVGElement {
  const MIN = -30;
  const MAX = 50;
  const WIDTH = 240;
  const HEIGHT = 48;
  const x = (t: number) => ((t - MIN) / (MAX - MIN)) * WIDTH;

  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("class", "temp-graphic");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("role", "img");
  svg.setAttribute(
    "aria-label",
    `Temperature likely between ${q10} and ${q90} degrees, around ${q50}`,
  );

  const band = document.createElementNS("http://www.w3.org/2000/svg", "rect");
  band.setAttribute("class", "temp-band");
  band.setAttribute("x", String(x(q10)));
  band.setAttribute("y", "12");
  band.setAttribute("width", String(x(q90) - x(q10)));
  band.setAttribute("height", "16");
  band.dataset.q10 = String(q10);
  band.dataset.q90 = String(q90);

  const marker = document.createElementNS("http://www.w3.org/2000/svg", "line");
  marker.setAttribute("class", "temp-median");
  marker.setAttribute("x1", String(x(q50)));
  marker.setAttribute("x2", String(x(q50)));
  marker.setAttribute("y1", "8");
  marker.setAttribute("y2", "32");
  marker.dataset.q50 = String(q50);

  const caption = document.createElementNS("http://www.w3.org/2000/svg", "text");
  caption.setAttribute("x", "0");
  caption.setAttribute("y", "46");
  caption.setAttribute("class", "temp-caption");
  caption.textContent = `${q10}°C – ${q90}°C (median ${q50}°C)`;

  svg.append(band, marker, caption);
  return svg;
}
