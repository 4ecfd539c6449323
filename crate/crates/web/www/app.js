import init, { formula_table, solve_path_power, exponent_series } from "./pkg/pebblekit_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function call(fn, ...args) {
  const out = JSON.parse(fn(...args));
  if (out && out.error) throw new Error(out.error);
  return out;
}

function showError(el, err) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = err.message;
  el.appendChild(p);
}

// formula table

function tabulate() {
  const out = $("f-out");
  try {
    const data = call(formula_table, num("f-n"), num("f-k"), num("f-t"));
    const table = document.createElement("table");
    const head = table.insertRow();
    head.insertCell().outerHTML = "<th>n \\ k</th>";
    for (let k = 1; k <= data.k_max; k++) head.insertCell().outerHTML = `<th>${k}</th>`;
    for (const row of data.rows) {
      const tr = table.insertRow();
      tr.insertCell().outerHTML = `<th>${row.n}</th>`;
      row.cells.forEach((c) => {
        const td = tr.insertCell();
        td.textContent = c.p;
        td.className = c.regime;
        td.title = `d = ${c.d}, ${c.regime}`;
      });
    }
    out.innerHTML = "";
    out.appendChild(table);
  } catch (e) {
    showError(out, e);
  }
}

// solver replay

const replay = { data: null, step: 0, timer: null };

function drawState() {
  const canvas = $("s-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const data = replay.data;
  if (!data) return;
  const n = data.n;
  const gap = (canvas.width - 80) / Math.max(n - 1, 1);
  const x = (v) => 40 + (v - 1) * gap;
  const y = canvas.height - 70;
  const counts = data.states[replay.step];
  const move = replay.step > 0 ? data.moves[replay.step - 1] : null;

  for (const [u, v] of data.edges) {
    const isMove = move && ((move[0] === u && move[1] === v) || (move[0] === v && move[1] === u));
    ctx.strokeStyle = isMove ? "#c33" : "#bbb";
    ctx.lineWidth = isMove ? 3 : 1;
    ctx.beginPath();
    if (v - u === 1) {
      ctx.moveTo(x(u), y);
      ctx.lineTo(x(v), y);
    } else {
      const mid = (x(u) + x(v)) / 2;
      const r = (x(v) - x(u)) / 2;
      ctx.ellipse(mid, y, r, Math.min(r, 30 * (v - u)), 0, Math.PI, 2 * Math.PI);
    }
    ctx.stroke();
  }
  for (let v = 1; v <= n; v++) {
    const demand = data.target[v - 1];
    const have = counts[v - 1];
    ctx.beginPath();
    ctx.arc(x(v), y, 16, 0, 2 * Math.PI);
    ctx.fillStyle = demand > 0 ? (have >= demand ? "#9d9" : "#fcc") : "#fff";
    ctx.fill();
    ctx.strokeStyle = "#333";
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.fillStyle = "#000";
    ctx.font = "bold 14px system-ui";
    ctx.textAlign = "center";
    ctx.fillText(String(have), x(v), y + 5);
    ctx.font = "12px system-ui";
    ctx.fillText(`v${v}`, x(v), y + 36);
    if (demand > 0) ctx.fillText(`needs ${demand}`, x(v), y + 52);
  }
  const total = data.states.length - 1;
  let info = data.solvable
    ? `step ${replay.step} of ${total}` + (move ? `: v${move[0]} -> v${move[1]}` : "")
    : `unsolvable (${data.reason.kind})`;
  $("s-info").textContent = info;
}

function solve() {
  stopPlay();
  try {
    replay.data = call(solve_path_power, num("s-n"), num("s-k"), $("s-c").value, $("s-d").value);
    replay.step = 0;
  } catch (e) {
    replay.data = null;
    $("s-info").textContent = e.message;
  }
  drawState();
}

function stepBy(delta) {
  if (!replay.data) return;
  const last = replay.data.states.length - 1;
  replay.step = Math.min(last, Math.max(0, replay.step + delta));
  drawState();
}

function stopPlay() {
  clearInterval(replay.timer);
  replay.timer = null;
  $("s-play").textContent = "play";
}

function togglePlay() {
  if (replay.timer) return stopPlay();
  if (!replay.data) return;
  if (replay.step === replay.data.states.length - 1) replay.step = 0;
  $("s-play").textContent = "pause";
  replay.timer = setInterval(() => {
    if (replay.step >= replay.data.states.length - 1) return stopPlay();
    stepBy(1);
  }, 600);
}

// exponent plot

function plotExponent() {
  const canvas = $("e-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let rows;
  try {
    rows = call(exponent_series, num("e-n"));
  } catch (e) {
    $("e-info").textContent = e.message;
    return;
  }
  const pad = 40;
  const nMax = rows[rows.length - 1].n;
  const eMax = Math.max(...rows.map((r) => Math.max(r.e_exact, r.M ?? 0)));
  const x = (n) => pad + ((n - 2) / Math.max(nMax - 2, 1)) * (canvas.width - 2 * pad);
  const y = (e) => canvas.height - pad - (e / eMax) * (canvas.height - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, canvas.height - pad);
  ctx.lineTo(canvas.width - pad / 2, canvas.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.font = "12px system-ui";
  ctx.fillText(`n = ${nMax}`, canvas.width - pad - 30, canvas.height - pad + 18);
  ctx.fillText(`e = ${eMax}`, 4, pad / 2 + 4);

  const audited = rows.filter((r) => r.M !== null && r.m !== null);
  ctx.fillStyle = "rgba(80, 120, 220, 0.18)";
  for (const r of audited) ctx.fillRect(x(r.n) - 1, y(r.M), 2, y(r.M - r.m) - y(r.M));

  ctx.strokeStyle = "#222";
  ctx.beginPath();
  rows.forEach((r, i) => (i ? ctx.lineTo(x(r.n), y(r.e_exact)) : ctx.moveTo(x(r.n), y(r.e_exact))));
  ctx.stroke();

  const findings = rows.filter((r) => r.bounds_ok === false);
  ctx.fillStyle = "#c33";
  for (const r of findings) {
    ctx.beginPath();
    ctx.arc(x(r.n), y(r.e_exact), 3.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  $("e-info").textContent =
    `band: [M - m, M]; ${findings.length} value(s) outside it` +
    (findings.length ? ` at n = ${findings.map((r) => r.n).join(", ")}` : "");
}

await init();
$("f-go").onclick = tabulate;
$("s-go").onclick = solve;
$("s-prev").onclick = () => stepBy(-1);
$("s-next").onclick = () => stepBy(1);
$("s-play").onclick = togglePlay;
$("e-go").onclick = plotExponent;
tabulate();
solve();
plotExponent();
