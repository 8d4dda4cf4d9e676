// Tiny DOM builders; keeps the step renderers readable without a framework.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | number> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "className") node.className = String(value);
    else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
    } else node.setAttribute(key, String(value));
  }
  node.append(...children);
  return node;
}

export function labeled(text: string, input: HTMLElement): HTMLLabelElement {
  return el("label", { className: "field" }, el("span", {}, text), input);
}

export function numberInput(
  value: number,
  onChange: (v: number) => void,
  attrs: Record<string, string | number> = {},
): HTMLInputElement {
  const input = el("input", { type: "number", value, ...attrs });
  input.addEventListener("change", () => onChange(Number(input.value)));
  return input;
}

export function checkbox(checked: boolean, onChange: (v: boolean) => void): HTMLInputElement {
  const input = el("input", { type: "checkbox" });
  input.checked = checked;
  input.addEventListener("change", () => onChange(input.checked));
  return input;
}

export function select(
  options: { value: string; label: string }[],
  current: string,
  onChange: (v: string) => void,
): HTMLSelectElement {
  const node = el("select", {});
  for (const option of options) {
    const opt = el("option", { value: option.value }, option.label);
    if (option.value === current) opt.selected = true;
    node.append(opt);
  }
  node.addEventListener("change", () => onChange(node.value));
  return node;
}

export function button(text: string, onClick: () => void, className = ""): HTMLButtonElement {
  const node = el("button", { type: "button", className }, text);
  node.addEventListener("click", onClick);
  return node;
}
