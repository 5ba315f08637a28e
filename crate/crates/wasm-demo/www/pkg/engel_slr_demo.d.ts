/* tslint:disable */
/* eslint-disable */

/**
 * Case name for a normal covector, e.g. `"TimelikeElliptic"`.
 */
export function geodesic_case(xi1: number, xi2: number, xi3: number, xi4: number): string;

/**
 * `(x1, x2)` projection of the normal geodesic from the origin, sampled with
 * step `h` up to `s_max` or the first pole. Layout: `[s_end, x1, x2, x1, x2, ...]`.
 */
export function geodesic_projection(xi1: number, xi2: number, xi3: number, xi4: number, s_max: number, h: number): Float64Array;

/**
 * `sn`, `cn`, `dn` at `n` points of `[0, u_max]` for modulus `k`.
 * Layout: `[u.., sn.., cn.., dn..]`.
 */
export function jacobi_curves(k: number, u_max: number, n: number): Float64Array;

/**
 * The ratio profile on `n` points of `[-tau_max, tau_max]`, followed by the
 * `(τ, ratio)` pairs of `m` sampled endpoints with `ξ2 = xi2`, `ξ3 = 1`.
 * Layout: `[tau.., profile.., tau_1, ratio_1, ...]`.
 */
export function ratio_curve(tau_max: number, n: number, xi2: number, m: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly geodesic_case: (a: number, b: number, c: number, d: number) => [number, number];
    readonly geodesic_projection: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly jacobi_curves: (a: number, b: number, c: number) => [number, number, number, number];
    readonly ratio_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
