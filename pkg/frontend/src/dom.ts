/** Tiny element builders; no framework, no virtual DOM. */

type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  node.append(...children);
  return node;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function svg(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Child[]
): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  node.append(...children);
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

export function section(title: string, hint: string): HTMLElement {
  const root = el("section", { class: "panel" });
  root.append(el("h2", {}, title));
  if (hint) {
    root.append(el("p", { class: "hint" }, hint));
  }
  return root;
}

export function emptyState(message: string): HTMLElement {
  return el("div", { class: "empty-state" }, message);
}

export function formatTimestamp(t: number): string {
  return new Date(t).toISOString().replace("T", " ").slice(0, 19);
}
