/**
 * Minimal deterministic SVG scene builder: linear/log scales, axes with
 * ticks, polylines, shaded bands, legends. No DOM dependency; output is a
 * self-contained vector file.
 */

export interface Scale {
  toPixel(value: number): number;
  ticks(): number[];
  readonly label: string;
}

const PALETTE = ['#d62728', '#ff7f0e', '#2ca02c', '#1f77b4', '#9467bd', '#8c564b'];

export function seriesColor(index: number): string {
  return PALETTE[index % PALETTE.length];
}

export function linearScale(lo: number, hi: number, pixLo: number, pixHi: number, label: string): Scale {
  if (hi <= lo) hi = lo + 1;
  const span = hi - lo;
  const step = niceStep(span / 5);
  const first = Math.ceil(lo / step) * step;
  const tickValues: number[] = [];
  for (let v = first; v <= hi + 1e-12 * span; v += step) tickValues.push(roundTo(v, step));
  return {
    toPixel: (v) => pixLo + ((v - lo) / span) * (pixHi - pixLo),
    ticks: () => tickValues,
    label,
  };
}

export function logScale(lo: number, hi: number, pixLo: number, pixHi: number, label: string): Scale {
  const logLo = Math.log10(Math.max(lo, 1e-300));
  const logHi = Math.log10(Math.max(hi, lo * 10));
  const tickValues: number[] = [];
  for (let e = Math.ceil(logLo); e <= Math.floor(logHi); e++) tickValues.push(10 ** e);
  return {
    toPixel: (v) => pixLo + ((Math.log10(v) - logLo) / (logHi - logLo)) * (pixHi - pixLo),
    ticks: () => tickValues,
    label,
  };
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const norm = raw / mag;
  const nice = norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10;
  return nice * mag;
}

function roundTo(v: number, step: number): number {
  const digits = Math.max(0, -Math.floor(Math.log10(step)) + 1);
  return Number(v.toFixed(digits + 2));
}

function fmt(v: number): string {
  if (v === 0) return '0';
  const abs = Math.abs(v);
  if (abs >= 10000 || abs < 0.001) return v.toExponential(0).replace('+', '');
  return String(Number(v.toPrecision(4)));
}

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_FRAME: Frame = { width: 720, height: 480, left: 70, right: 24, top: 28, bottom: 52 };

export class SvgScene {
  private parts: string[] = [];

  constructor(readonly frame: Frame, readonly title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" ` +
        `viewBox="0 0 ${frame.width} ${frame.height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${frame.width}" height="${frame.height}" fill="white"/>`,
      `<text x="${frame.width / 2}" y="${frame.top - 10}" text-anchor="middle" font-size="14">${escapeXml(title)}</text>`,
    );
  }

  axes(x: Scale, y: Scale): void {
    const f = this.frame;
    const bottom = f.height - f.bottom;
    this.parts.push(
      `<line x1="${f.left}" y1="${bottom}" x2="${f.width - f.right}" y2="${bottom}" stroke="black"/>`,
      `<line x1="${f.left}" y1="${f.top}" x2="${f.left}" y2="${bottom}" stroke="black"/>`,
    );
    for (const tick of x.ticks()) {
      const px = x.toPixel(tick);
      this.parts.push(
        `<line x1="${px.toFixed(2)}" y1="${bottom}" x2="${px.toFixed(2)}" y2="${bottom + 5}" stroke="black"/>`,
        `<text x="${px.toFixed(2)}" y="${bottom + 18}" text-anchor="middle" font-size="11">${fmt(tick)}</text>`,
      );
    }
    for (const tick of y.ticks()) {
      const py = y.toPixel(tick);
      this.parts.push(
        `<line x1="${f.left - 5}" y1="${py.toFixed(2)}" x2="${f.left}" y2="${py.toFixed(2)}" stroke="black"/>`,
        `<text x="${f.left - 8}" y="${(py + 4).toFixed(2)}" text-anchor="end" font-size="11">${fmt(tick)}</text>`,
      );
    }
    this.parts.push(
      `<text x="${(f.left + f.width - f.right) / 2}" y="${f.height - 14}" text-anchor="middle" font-size="12">${escapeXml(x.label)}</text>`,
      `<text x="18" y="${(f.top + bottom) / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 18 ${(f.top + bottom) / 2})">${escapeXml(y.label)}</text>`,
    );
  }

  band(points: { px: number; upper: number; lower: number }[], color: string): void {
    if (points.length === 0) return;
    const forward = points.map((p) => `${p.px.toFixed(2)},${p.upper.toFixed(2)}`);
    const backward = [...points].reverse().map((p) => `${p.px.toFixed(2)},${p.lower.toFixed(2)}`);
    this.parts.push(
      `<polygon points="${forward.join(' ')} ${backward.join(' ')}" fill="${color}" fill-opacity="0.22" stroke="none"/>`,
    );
  }

  line(points: { px: number; py: number }[], color: string, dash = ''): void {
    if (points.length === 0) return;
    const attr = dash ? ` stroke-dasharray="${dash}"` : '';
    this.parts.push(
      `<polyline points="${points.map((p) => `${p.px.toFixed(2)},${p.py.toFixed(2)}`).join(' ')}" ` +
        `fill="none" stroke="${color}" stroke-width="1.6"${attr}/>`,
    );
  }

  marker(px: number, py: number, color: string): void {
    this.parts.push(`<circle cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="3.5" fill="${color}"/>`);
  }

  legend(labels: string[], colors: string[]): void {
    const f = this.frame;
    labels.forEach((label, i) => {
      const y = f.top + 16 + 18 * i;
      const x = f.width - f.right - 170;
      this.parts.push(
        `<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" stroke="${colors[i]}" stroke-width="2"/>`,
        `<text x="${x + 28}" y="${y}" font-size="11">${escapeXml(label)}</text>`,
      );
    });
  }

  render(): string {
    return this.parts.join('\n') + '\n</svg>\n';
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');
}
