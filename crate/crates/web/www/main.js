import init, { sequence, matrix, walkthrough } from "./pkg/lucas_hill_web.js";

const $ = (id) => document.getElementById(id);

function el(tag, text) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  return node;
}

function matrixTable(title, rows) {
  const wrap = el("div");
  wrap.append(el("h3", title));
  const table = el("table");
  table.className = "matrix";
  for (const row of rows) {
    const tr = el("tr");
    for (const v of row) tr.append(el("td", String(v)));
    table.append(tr);
  }
  wrap.append(table);
  return wrap;
}

// Runs `fn` and routes a thrown validation message into the error box.
function guarded(errorId, fn) {
  $(errorId).textContent = "";
  try {
    fn();
  } catch (e) {
    $(errorId).textContent = String(e);
  }
}

function onSubmit(formId, handler) {
  const form = $(formId);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler(new FormData(form));
  });
}

function showSequence(f) {
  guarded("seq-error", () => {
    const terms = JSON.parse(
      sequence(f.get("family"), Number(f.get("k")), Number(f.get("from")), Number(f.get("to"))),
    );
    const out = $("seq-out");
    out.replaceChildren();
    const head = el("tr");
    head.append(el("th", "n"), el("th", "value"));
    out.append(head);
    for (const { n, value } of terms) {
      const tr = el("tr");
      tr.append(el("td", String(n)), el("td", value));
      out.append(tr);
    }
  });
}

function showMatrix(f) {
  guarded("mat-error", () => {
    const v = JSON.parse(matrix(Number(f.get("k")), Number(f.get("n")), Number(f.get("p"))));
    const out = $("mat-out");
    out.replaceChildren(matrixTable(`L(${v.n}) mod ${v.p}, det ${v.det}`, v.matrix));
    if (v.inverse) {
      const check = v.product_is_identity ? "product is I" : "product is NOT I";
      out.append(matrixTable(`closed-form inverse (${check})`, v.inverse));
    } else {
      out.append(el("p", `singular modulo ${v.p}: no inverse`));
    }
  });
}

function showWalkthrough(f) {
  guarded("walk-error", () => {
    const w = JSON.parse(
      walkthrough(Number(f.get("alpha")), Number(f.get("d")), Number(f.get("e")), f.get("message")),
    );
    const out = $("walk-out");
    out.replaceChildren();
    const step = (text, extra) => {
      const li = el("li", text);
      if (extra) li.append(extra);
      out.append(li);
    };
    step(`Public key (p, e1, e2) = (${w.public_key.join(", ")})`);
    step(`Sender: s = ${w.s}, lambda = ${w.lambda}`);
    step("Key matrix K", matrixTable("", w.key));
    step(`Shift B = [${w.shift.join(", ")}]`);
    step(`Plaintext symbols [${w.plaintext.join(", ")}]`);
    step(`Ciphertext symbols [${w.ciphertext.join(", ")}] = "${w.ciphertext_text}"`);
    step(`Only (s, C) is sent. Receiver recovers lambda = ${w.recovered_lambda}`);
    step("Decryption key K*", matrixTable("", w.decryption_key));
    step(`Recovered text: "${w.recovered_text}"`);
  });
}

await init();
$("status").textContent = "Ready.";
onSubmit("seq-form", showSequence);
onSubmit("mat-form", showMatrix);
onSubmit("walk-form", showWalkthrough);
