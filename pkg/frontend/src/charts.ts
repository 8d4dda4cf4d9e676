// Hand-rolled SVG charts: histograms for sampled buckets, a heat-map for
// joint tables, and the achieved-vs-target bar panel.  All data arrives
// pre-bucketed from the service; nothing is sampled client side.

const SVG_NS = "http://www.w3.org/2000/svg";

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

export function renderHistogram(
  container: HTMLElement,
  buckets: [number, number][],
  bucketWidth: number,
  options: { width?: number; height?: number; color?: string } = {},
): void {
  const width = options.width ?? 420;
  const height = options.height ?? 160;
  const color = options.color ?? "#4a7fb5";
  container.replaceChildren();
  if (buckets.length === 0) {
    container.textContent = "no data";
    return;
  }
  const svg = svgElement("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const maxCount = Math.max(...buckets.map(([, c]) => c));
  const lo = buckets[0]![0];
  const hi = buckets[buckets.length - 1]![0] + bucketWidth;
  const plotH = height - 18;
  const barW = Math.max(1, (width / (hi - lo)) * bucketWidth - 1);
  for (const [start, count] of buckets) {
    const h = maxCount > 0 ? (count / maxCount) * (plotH - 4) : 0;
    svg.append(
      svgElement("rect", {
        x: ((start - lo) / (hi - lo)) * width,
        y: plotH - h,
        width: barW,
        height: h,
        fill: color,
      }),
    );
  }
  const labelStep = Math.max(1, Math.ceil(buckets.length / 8));
  buckets.forEach(([start], i) => {
    if (i % labelStep !== 0) return;
    const text = svgElement("text", {
      x: ((start - lo) / (hi - lo)) * width + 2,
      y: height - 4,
      "font-size": 10,
      fill: "#555",
    });
    text.textContent = String(start);
    svg.append(text);
  });
  container.append(svg);
}

export function renderCurve(
  container: HTMLElement,
  points: [number, number][],
  options: { width?: number; height?: number; yMax?: number; color?: string } = {},
): void {
  const width = options.width ?? 420;
  const height = options.height ?? 140;
  const yMax = options.yMax ?? 1;
  container.replaceChildren();
  if (points.length < 2) return;
  const xs = points.map(([x]) => x);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const svg = svgElement("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const path = points
    .map(([x, y], i) => {
      const px = ((x - xLo) / (xHi - xLo)) * (width - 8) + 4;
      const py = height - 14 - (Math.min(y, yMax) / yMax) * (height - 22);
      return `${i === 0 ? "M" : "L"}${px.toFixed(1)},${py.toFixed(1)}`;
    })
    .join(" ");
  svg.append(svgElement("path", { d: path, fill: "none", stroke: "#b5564a", "stroke-width": 2 }));
  for (const frac of [0, 0.5, 1]) {
    const text = svgElement("text", {
      x: 4 + frac * (width - 30),
      y: height - 2,
      "font-size": 10,
      fill: "#555",
    });
    text.textContent = String(Math.round(xLo + frac * (xHi - xLo)));
    svg.append(text);
  }
  container.append(svg);
}

export function renderHeatmap(
  container: HTMLElement,
  cells: number[][], // rows of [ageClassStart, los, weight]
  options: { cellSize?: number } = {},
): void {
  const size = options.cellSize ?? 13;
  container.replaceChildren();
  if (cells.length === 0) {
    container.textContent = "empty table";
    return;
  }
  const ages = [...new Set(cells.map((c) => c[0]!))].sort((a, b) => a - b);
  const loses = [...new Set(cells.map((c) => c[1]!))].sort((a, b) => a - b);
  const maxW = Math.max(...cells.map((c) => c[2]!));
  const width = ages.length * size + 34;
  const height = loses.length * size + 26;
  const svg = svgElement("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const ageIndex = new Map(ages.map((a, i) => [a, i]));
  const losIndex = new Map(loses.map((l, i) => [l, i]));
  for (const cell of cells) {
    const [age, los, weight] = cell as [number, number, number];
    const shade = maxW > 0 ? weight / maxW : 0;
    svg.append(
      svgElement("rect", {
        x: 30 + ageIndex.get(age)! * size,
        y: (loses.length - 1 - losIndex.get(los)!) * size + 2,
        width: size - 1,
        height: size - 1,
        fill: `rgba(40, 70, 120, ${(0.08 + 0.92 * shade).toFixed(3)})`,
      }),
    );
  }
  ages.forEach((a, i) => {
    if (i % 3 !== 0) return;
    const text = svgElement("text", {
      x: 30 + i * size,
      y: height - 12,
      "font-size": 9,
      fill: "#555",
    });
    text.textContent = String(a);
    svg.append(text);
  });
  loses.forEach((l, i) => {
    if (i % 4 !== 0) return;
    const text = svgElement("text", {
      x: 2,
      y: (loses.length - 1 - i) * size + 12,
      "font-size": 9,
      fill: "#555",
    });
    text.textContent = String(l);
    svg.append(text);
  });
  const caption = svgElement("text", { x: 30, y: height - 2, "font-size": 9, fill: "#777" });
  caption.textContent = "age class (x) vs stay length (y); darker = likelier";
  svg.append(caption);
  container.append(svg);
}

export function renderLoadBars(
  container: HTMLElement,
  achieved: number[],
  target: number,
): void {
  container.replaceChildren();
  const width = 420;
  const height = 30 + achieved.length * 22;
  const svg = svgElement("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  achieved.forEach((value, i) => {
    const y = 8 + i * 22;
    svg.append(
      svgElement("rect", { x: 80, y, width: (width - 120) * value, height: 14, fill: "#4a7fb5" }),
    );
    const label = svgElement("text", { x: 4, y: y + 11, "font-size": 11, fill: "#333" });
    label.textContent = `instance ${i}`;
    svg.append(label);
    const val = svgElement("text", {
      x: 84 + (width - 120) * value,
      y: y + 11,
      "font-size": 11,
      fill: "#333",
    });
    val.textContent = value.toFixed(3);
    svg.append(val);
  });
  const tx = 80 + (width - 120) * target;
  svg.append(
    svgElement("line", {
      x1: tx,
      y1: 4,
      x2: tx,
      y2: height - 18,
      stroke: "#b5564a",
      "stroke-width": 2,
      "stroke-dasharray": "4 3",
    }),
  );
  const caption = svgElement("text", { x: 80, y: height - 4, "font-size": 10, fill: "#777" });
  caption.textContent = `dashed line = target load ${target}`;
  svg.append(caption);
  container.append(svg);
}
