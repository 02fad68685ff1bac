import init, { analyze, family_series, sample_cut } from "./pkg/twoforest_web.js";

const presets = {
  house: "5 6\n1 2\n1 3\n2 4\n3 4\n3 5\n4 5\n",
  k4: "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
  petersen: "10 15\n1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n2 7\n3 8\n4 9\n5 10\n6 8\n8 10\n10 7\n7 9\n9 6\n",
  theta: "2 3\n1 2\n1 2\n1 2\n",
  weighted: "5 6\n1 2 1\n1 3 1/2\n2 4 2\n3 4 3\n3 5 1\n4 5 3/2\n",
};

const $ = (id) => document.getElementById(id);

function fmt(v) {
  if (v === null || v === undefined) return "-";
  if (typeof v === "object") return `${v.exact} (${v.approx.toPrecision(6)})`;
  return String(v);
}

function fillTable(table, rows, header) {
  table.innerHTML = "";
  if (header) {
    const tr = table.insertRow();
    for (const h of header) {
      const th = document.createElement("th");
      th.textContent = h;
      tr.appendChild(th);
    }
  }
  for (const row of rows) {
    const tr = table.insertRow();
    for (const cell of row) tr.insertCell().textContent = cell;
  }
}

function guarded(errorId, f) {
  return () => {
    $(errorId).textContent = "";
    try {
      f();
    } catch (e) {
      $(errorId).textContent = e.message ?? String(e);
    }
  };
}

function drawHeatmap(matrix) {
  const canvas = $("heatmap");
  const ctx = canvas.getContext("2d");
  const n = matrix.length;
  const cell = canvas.width / n;
  const max = Math.max(...matrix.flat().map((v) => v.approx)) || 1;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const t = matrix[i][j].approx / max;
      ctx.fillStyle = `rgb(${Math.round(255 * t)}, ${Math.round(80 + 100 * (1 - t))}, ${Math.round(255 * (1 - t))})`;
      ctx.fillRect(j * cell, i * cell, cell, cell);
      if (n <= 10) {
        ctx.fillStyle = "#fff";
        ctx.font = `${Math.min(14, cell / 3)}px monospace`;
        ctx.textAlign = "center";
        ctx.fillText(matrix[i][j].exact, (j + 0.5) * cell, (i + 0.55) * cell);
      }
    }
  }
}

function drawBars(canvas, bars) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const max = Math.max(...bars.map((b) => b[1]));
  const w = canvas.width / bars.length;
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  bars.forEach(([label, value], i) => {
    const h = (canvas.height - 30) * (value / max);
    ctx.fillStyle = "#4a7ab5";
    ctx.fillRect(i * w + 4, canvas.height - 18 - h, w - 8, h);
    ctx.fillStyle = "#222";
    ctx.fillText(label, (i + 0.5) * w, canvas.height - 4);
  });
}

function drawRatios(rows) {
  const canvas = $("ratio-chart");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (rows.length === 0) return;
  const pad = 30;
  const xs = rows.map((r) => r.n);
  const series = [
    { key: "ratio", color: "#4a7ab5", label: "trees to two-forests ratio" },
    { key: "lower_bound", color: "#c0504d", label: "lower bound" },
  ];
  const ys = rows.flatMap((r) => series.map((s) => r[s.key].approx));
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [0, Math.max(...ys) * 1.05];
  const px = (x) => pad + ((x - x0) / Math.max(1, x1 - x0)) * (canvas.width - 2 * pad);
  const py = (y) => canvas.height - pad - ((y - y0) / (y1 - y0)) * (canvas.height - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  ctx.font = "11px sans-serif";
  ctx.fillStyle = "#222";
  ctx.fillText(`n = ${x0}`, pad, canvas.height - 10);
  ctx.fillText(`${x1}`, canvas.width - pad - 10, canvas.height - 10);
  ctx.fillText(y1.toFixed(2), 2, pad);
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    rows.forEach((r, i) => {
      const [x, y] = [px(r.n), py(r[s.key].approx)];
      i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
    });
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, pad + 6, pad + 14 + 14 * k);
  });
}

function runAnalyze() {
  const d = JSON.parse(analyze($("graph").value));
  fillTable($("invariants"), [
    ["vertices", d.n],
    ["edges", d.m],
    ["genus", d.genus],
    ["spanning trees", d.kappa],
    ["two-forests", d.kappa2],
    ["two-forests / trees", fmt(d.ratio)],
    ["lower bound (n-1)^2/4m", fmt(d.lower_bound)],
    ["gamma", fmt(d.gamma)],
    ["eta", fmt(d.eta)],
    ["tau", fmt(d.tau)],
    ["expected cut", fmt(d.expected_cut)],
    ["sum of r^2 over edges", fmt(d.sum_r2)],
    ["curvature", d.mu.map((x) => x.exact).join("  ")],
    ["identity k2/k = 3 gamma + sum r^2 / 4", d.identity_holds === null ? "-" : d.identity_holds ? "holds" : "FAILS"],
  ]);
  drawHeatmap(d.resistance);
}

function runSample() {
  const d = JSON.parse(sample_cut($("graph").value, Number($("trials").value), Number($("seed").value)));
  fillTable($("estimate"), [
    ["estimate", d.estimate.toFixed(5)],
    ["standard error", d.std_error.toFixed(5)],
    ["exact", fmt(d.exact)],
    ["trials", d.trials],
    ["seed", d.seed],
  ]);
  drawBars($("histogram"), d.histogram.map(([k, v]) => [`|cut| = ${k}`, v]));
}

function runSeries() {
  const d = JSON.parse(family_series($("family").value, Number($("from").value), Number($("to").value)));
  fillTable(
    $("family-table"),
    d.rows.map((r) => [r.n, r.kappa, r.kappa2, r.ratio.exact, r.lower_bound.exact, r.matches_formula === null ? "-" : r.matches_formula ? "yes" : "no"]),
    ["n", "trees", "two-forests", "ratio", "bound", "formula"],
  );
  drawRatios(d.rows);
}

await init();
$("preset").onchange = () => {
  $("graph").value = presets[$("preset").value];
};
$("graph").value = presets.house;
$("analyze").onclick = guarded("analyze-error", runAnalyze);
$("sample").onclick = guarded("sample-error", runSample);
$("series").onclick = guarded("family-error", runSeries);
runAnalyze();
