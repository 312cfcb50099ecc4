import init, { staircase, graph, sweep } from "./pkg/spline_reg_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function mono([x, y, z]) {
  const part = (v, e) => (e === 0 ? "" : e === 1 ? v : `${v}^${e}`);
  const s = [part("x", x), part("y", y), part("z", z)].filter(Boolean).join(" ");
  return s || "1";
}

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.innerHTML = `<span class="err">${e.message ?? e}</span>`;
  }
}

function drawStaircase() {
  const out = $("st-out");
  guard(out, () => {
    const d = JSON.parse(staircase(num("st-r"), num("st-s")));
    const cv = $("st-canvas");
    const ctx = cv.getContext("2d");
    ctx.clearRect(0, 0, cv.width, cv.height);
    const maxX = d.lambda.length + 1;
    const maxZ = d.lambda[0] + 1;
    const cell = Math.min((cv.width - 40) / maxX, (cv.height - 40) / maxZ);
    const px = (i, t) => [30 + i * cell, cv.height - 20 - t * cell];
    // monomials x^i z^t outside In(J') are shaded; the colon shift is marked
    ctx.fillStyle = "#cde";
    d.lambda.forEach((l, i) => {
      for (let t = 0; t < l; t++) {
        const [x, y] = px(i, t + 1);
        ctx.fillRect(x, y, cell - 1, cell - 1);
      }
    });
    ctx.strokeStyle = "#c33";
    ctx.beginPath();
    const [x0, y0] = px(0, d.r + 1);
    ctx.moveTo(x0, y0);
    ctx.lineTo(px(maxX, d.r + 1)[0], y0);
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.fillText("x", cv.width - 15, cv.height - 8);
    ctx.fillText("z", 8, 15);
    out.textContent =
      `In(J') = <${d.generators.map(mono).join(", ")}>\n` +
      `lambda  = ${d.lambda.join(", ")}\n` +
      `lambda' = ${d.lambda_prime.join(", ")}   i0 = ${d.i0}   (red line: z^${d.r + 1})`;
  });
}

function drawGraph() {
  const out = $("g-out");
  guard(out, () => {
    const d = JSON.parse(graph(num("g-a"), num("g-b"), num("g-r")));
    const cv = $("g-canvas");
    const ctx = cv.getContext("2d");
    ctx.clearRect(0, 0, cv.width, cv.height);
    const rep = d.report;
    if (d.nodes.length === 0) {
      out.textContent = `In Q = ${d.in_q}\n${rep.note ?? "module vanishes"}`;
      return;
    }
    // straight-line drawing at (deg_x, deg_y), x to the right, y upward
    const maxX = Math.max(...d.nodes.map((n) => n[0]), 1);
    const maxY = Math.max(...d.nodes.map((n) => n[1]), 1);
    const sx = (cv.width - 120) / maxX;
    const sy = (cv.height - 80) / maxY;
    const pos = (n) => [60 + n[0] * sx, cv.height - 40 - n[1] * sy];
    ctx.strokeStyle = "#888";
    for (const e of d.edges) {
      const [a, b] = [pos(d.nodes[e.ends[0]]), pos(d.nodes[e.ends[1]])];
      ctx.beginPath();
      ctx.moveTo(...a);
      ctx.lineTo(...b);
      ctx.stroke();
      ctx.fillStyle = "#666";
      ctx.fillText(mono(e.lcm), (a[0] + b[0]) / 2 + 4, (a[1] + b[1]) / 2 - 4);
    }
    for (const n of d.nodes) {
      const [x, y] = pos(n);
      ctx.fillStyle = "#246";
      ctx.beginPath();
      ctx.arc(x, y, 4, 0, 2 * Math.PI);
      ctx.fill();
      ctx.fillText(mono(n), x + 6, y + 14);
    }
    out.textContent =
      `In Q = ${d.in_q}\n` +
      `faces: ${d.faces.map(mono).join(", ")}\n` +
      `regularity ${rep.exact}, bounds [${rep.lower}, ${rep.upper}], witness ${rep.witness}, ` +
      `exact <= 2r: ${rep.conjecture_holds}`;
  });
}

function drawSweep() {
  const out = $("sw-out");
  guard(out, () => {
    const d = JSON.parse(sweep(num("sw-n"), num("sw-r")));
    const n = d.rows.length;
    let html = "<table><tr><th>a \\ b</th>";
    for (let j = 0; j < n; j++) html += `<th>${d.first + j}</th>`;
    html += "</tr>";
    d.rows.forEach((row, i) => {
      html += `<tr><th>${d.first + i}</th>`;
      for (const c of row) {
        const v = c.exact ?? "0";
        const tone = c.exact === null ? "#eee" : c.exact === c.lower ? "#dfe" : "#fed";
        html += `<td style="background:${tone}" title="[${c.lower}, ${c.upper}]">${v}</td>`;
      }
      html += "</tr>";
    });
    out.innerHTML = html + "</table><p>green: lower bound attained, orange: upper, grey: module vanishes</p>";
  });
}

await init();
for (const [ids, f] of [
  [["st-r", "st-s"], drawStaircase],
  [["g-a", "g-b", "g-r"], drawGraph],
  [["sw-n", "sw-r"], drawSweep],
]) {
  ids.forEach((id) => $(id).addEventListener("input", f));
  f();
}
