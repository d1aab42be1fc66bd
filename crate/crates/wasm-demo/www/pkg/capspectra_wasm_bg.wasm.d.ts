/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_comparison_free: (a: number, b: number) => void;
export const capEigenfunction: (a: number, b: number) => [number, number, number];
export const chitiComparison: (a: number, b: number, c: number, d: number) => [number, number, number];
export const comparison_cap: (a: number) => [number, number];
export const comparison_crossings: (a: number) => [number, number];
export const comparison_domain: (a: number) => [number, number];
export const comparison_lambda: (a: number) => number;
export const comparison_lhs: (a: number) => number;
export const comparison_radius: (a: number) => number;
export const comparison_rhs: (a: number) => number;
export const comparison_thetas: (a: number) => [number, number];
export const torsionComparison: (a: number, b: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
