/**
 * Best-effort 2-D structure sketch from a SMILES subset.
 *
 * Mirrors the service's grammar closely enough to lay out the structures it
 * screens: organic-subset and bracket atoms, bonds - = # :, branches, ring
 * closures, dots. Layout is a simple zigzag walk — it favors never blocking
 * review over chemical-drawing aesthetics. Returns null on any parse or
 * layout failure so callers can fall back to the SMILES text.
 */

interface SketchAtom {
  label: string;
  aromatic: boolean;
  x: number;
  y: number;
}

interface SketchBond {
  a: number;
  b: number;
  order: number; // 1, 2, 3, or 4 (aromatic)
}

const TWO_CHAR = ["Cl", "Br"];
const ONE_CHAR = "BCNOPSFI";
const AROMATIC = "bcnops";
const BOND_ORDER: Record<string, number> = {
  "-": 1, "=": 2, "#": 3, ":": 4, "/": 1, "\\": 1,
};
const BOND_LENGTH = 28;

function parse(smiles: string): { atoms: SketchAtom[]; bonds: SketchBond[] } {
  const atoms: SketchAtom[] = [];
  const bonds: SketchBond[] = [];
  const adjacency: number[][] = [];
  const branchStack: number[] = [];
  const openRings = new Map<number, { atom: number; order: number | null }>();
  let prev: number | null = null;
  let pendingBond: number | null = null;

  const addAtom = (label: string, aromatic: boolean): number => {
    atoms.push({ label, aromatic, x: 0, y: 0 });
    adjacency.push([]);
    return atoms.length - 1;
  };
  const addBond = (a: number, b: number, order: number): void => {
    if (a === b) throw new Error("self bond");
    bonds.push({ a, b, order });
    adjacency[a].push(b);
    adjacency[b].push(a);
  };
  const attach = (idx: number): void => {
    if (prev !== null) addBond(prev, idx, pendingBond ?? 1);
    pendingBond = null;
    prev = idx;
  };

  let i = 0;
  while (i < smiles.length) {
    const c = smiles[i];
    if (c === "[") {
      const end = smiles.indexOf("]", i);
      if (end < 0) throw new Error("unterminated bracket");
      const inner = smiles.slice(i + 1, end);
      const m = /^\d*([A-Za-z][a-z]?)/.exec(inner);
      if (!m) throw new Error("malformed bracket atom");
      const symbol = m[1];
      const aromatic = symbol[0] === symbol[0].toLowerCase();
      const charge = inner.includes("+") ? "+" : inner.includes("-") ? "-" : "";
      attach(addAtom(
        (aromatic ? symbol[0].toUpperCase() + symbol.slice(1) : symbol) + charge,
        aromatic,
      ));
      i = end + 1;
    } else if (TWO_CHAR.includes(smiles.slice(i, i + 2))) {
      attach(addAtom(smiles.slice(i, i + 2), false));
      i += 2;
    } else if (ONE_CHAR.includes(c)) {
      attach(addAtom(c, false));
      i += 1;
    } else if (AROMATIC.includes(c)) {
      attach(addAtom(c.toUpperCase(), true));
      i += 1;
    } else if (c in BOND_ORDER) {
      if (prev === null || pendingBond !== null) throw new Error("dangling bond");
      pendingBond = BOND_ORDER[c];
      i += 1;
    } else if (c === "(") {
      if (prev === null) throw new Error("branch before atom");
      branchStack.push(prev);
      i += 1;
    } else if (c === ")") {
      const top = branchStack.pop();
      if (top === undefined || pendingBond !== null) throw new Error("bad branch close");
      prev = top;
      i += 1;
    } else if (/\d/.test(c) || c === "%") {
      let num: number;
      if (c === "%") {
        if (!/^\d\d$/.test(smiles.slice(i + 1, i + 3))) throw new Error("bad % ring");
        num = parseInt(smiles.slice(i + 1, i + 3), 10);
        i += 3;
      } else {
        num = parseInt(c, 10);
        i += 1;
      }
      if (prev === null) throw new Error("ring before atom");
      const open = openRings.get(num);
      if (open) {
        openRings.delete(num);
        addBond(open.atom, prev, pendingBond ?? open.order ?? 1);
      } else {
        openRings.set(num, { atom: prev, order: pendingBond });
      }
      pendingBond = null;
    } else if (c === ".") {
      if (pendingBond !== null || branchStack.length) throw new Error("bad dot");
      prev = null;
      i += 1;
    } else {
      throw new Error(`unsupported character ${c}`);
    }
  }
  if (pendingBond !== null || branchStack.length || openRings.size || !atoms.length) {
    throw new Error("incomplete structure");
  }

  layout(atoms, adjacency);
  return { atoms, bonds };
}

function layout(atoms: SketchAtom[], adjacency: number[][]): void {
  const placed = new Array(atoms.length).fill(false);
  const walk = (idx: number, x: number, y: number, angle: number, depth: number): void => {
    placed[idx] = true;
    atoms[idx].x = x;
    atoms[idx].y = y;
    const children = adjacency[idx].filter((n) => !placed[n]);
    children.forEach((child, k) => {
      // main chain zigzags; extra branches fan out at right angles
      const zig = depth % 2 === 0 ? 30 : -30;
      const delta = k === 0 ? zig : k === 1 ? zig + 110 : zig - 110;
      const rad = ((angle + delta) * Math.PI) / 180;
      walk(
        child,
        x + BOND_LENGTH * Math.cos(rad),
        y + BOND_LENGTH * Math.sin(rad),
        angle + delta - zig,
        depth + 1,
      );
    });
  };
  let cursorX = 0;
  for (let i = 0; i < atoms.length; i += 1) {
    if (!placed[i]) {
      walk(i, cursorX, 0, 0, 0);
      cursorX = Math.max(...atoms.filter((_, j) => placed[j]).map((a) => a.x)) + 2 * BOND_LENGTH;
    }
  }
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function bondLines(atoms: SketchAtom[], bond: SketchBond): string {
  const a = atoms[bond.a];
  const b = atoms[bond.b];
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1;
  const ox = (-dy / len) * 2.5;
  const oy = (dx / len) * 2.5;
  const line = (off: number, dash = ""): string =>
    `<line x1="${(a.x + ox * off).toFixed(1)}" y1="${(a.y + oy * off).toFixed(1)}" ` +
    `x2="${(b.x + ox * off).toFixed(1)}" y2="${(b.y + oy * off).toFixed(1)}" ` +
    `stroke="#333" stroke-width="1.4"${dash}/>`;
  if (bond.order === 2) return line(-1) + line(1);
  if (bond.order === 3) return line(-2) + line(0) + line(2);
  if (bond.order === 4) return line(0) + line(2, ' stroke-dasharray="3 2"');
  return line(0);
}

/** Render a SMILES string to an inline SVG, or null if it cannot be laid out. */
export function sketchSvg(smiles: string): string | null {
  try {
    const { atoms, bonds } = parse(smiles);
    const xs = atoms.map((a) => a.x);
    const ys = atoms.map((a) => a.y);
    const pad = 16;
    const minX = Math.min(...xs) - pad;
    const minY = Math.min(...ys) - pad;
    const width = Math.max(...xs) - minX + pad;
    const height = Math.max(...ys) - minY + pad;
    const parts: string[] = [
      `<svg class="sketch" xmlns="http://www.w3.org/2000/svg" ` +
        `viewBox="${minX.toFixed(1)} ${minY.toFixed(1)} ${width.toFixed(1)} ${height.toFixed(1)}" ` +
        `width="${Math.min(360, width * 1.4).toFixed(0)}">`,
    ];
    for (const bond of bonds) parts.push(bondLines(atoms, bond));
    for (const atom of atoms) {
      if (atom.label === "C" && !atom.aromatic) continue;
      parts.push(
        `<circle cx="${atom.x.toFixed(1)}" cy="${atom.y.toFixed(1)}" r="7" fill="#fff"/>` +
          `<text x="${atom.x.toFixed(1)}" y="${atom.y.toFixed(1)}" ` +
          `text-anchor="middle" dominant-baseline="central" font-size="9" ` +
          `fill="#06589c">${escapeXml(atom.label)}</text>`,
      );
    }
    parts.push("</svg>");
    return parts.join("");
  } catch {
    return null;
  }
}
