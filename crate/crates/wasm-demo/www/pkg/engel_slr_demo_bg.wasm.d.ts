/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const geodesic_case: (a: number, b: number, c: number, d: number) => [number, number];
export const geodesic_projection: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const jacobi_curves: (a: number, b: number, c: number) => [number, number, number, number];
export const ratio_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
