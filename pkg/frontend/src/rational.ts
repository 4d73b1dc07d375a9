/**
 * Exact rational arithmetic over bigint, mirroring the server's
 * normalization contract: raw nonnegative importances are scaled so the
 * normalized weights sum to exactly 1. Only weight inputs are computed
 * here; scores always come from the API already aggregated.
 */

export interface Frac {
  num: bigint;
  den: bigint;
}

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function frac(num: bigint | number, den: bigint | number = 1n): Frac {
  let n = BigInt(num);
  let d = BigInt(den);
  if (d === 0n) throw new Error('zero denominator');
  if (d < 0n) {
    n = -n;
    d = -d;
  }
  const g = gcd(n, d) || 1n;
  return { num: n / g, den: d / g };
}

export function add(a: Frac, b: Frac): Frac {
  return frac(a.num * b.den + b.num * a.den, a.den * b.den);
}

export function div(a: Frac, b: Frac): Frac {
  if (b.num === 0n) throw new Error('division by zero');
  return frac(a.num * b.den, a.den * b.num);
}

export function eq(a: Frac, b: Frac): boolean {
  return a.num === b.num && a.den === b.den;
}

export function isZero(a: Frac): boolean {
  return a.num === 0n;
}

export const ZERO: Frac = { num: 0n, den: 1n };
export const ONE: Frac = { num: 1n, den: 1n };

export function sum(values: Iterable<Frac>): Frac {
  let acc = ZERO;
  for (const v of values) acc = add(acc, v);
  return acc;
}

/** Normalize raw nonnegative weights so they sum to exactly 1 (server mirror). */
export function normalize(raw: Record<string, Frac>): Record<string, Frac> | null {
  const total = sum(Object.values(raw));
  if (isZero(total)) return null;
  const out: Record<string, Frac> = {};
  for (const [key, value] of Object.entries(raw)) {
    if (value.num < 0n) throw new Error(`negative weight for ${key}`);
    out[key] = div(value, total);
  }
  return out;
}

export function toWire(value: Frac): { num: number; den: number } {
  return { num: Number(value.num), den: Number(value.den) };
}

/** Percentage with one decimal for the live preview (display rounding only). */
export function asPercent(value: Frac): string {
  // round(value * 1000) / 10, half away from zero on the last digit
  const scaled = value.num * 1000n;
  const whole = scaled / value.den;
  const rem = scaled % value.den;
  const rounded = rem * 2n >= value.den ? whole + 1n : whole;
  const tenths = rounded % 10n;
  return `${rounded / 10n}.${tenths}%`;
}
