/* tslint:disable */
/* eslint-disable */

/**
 * Two sampled curves over a common θ axis plus a few scalars.
 */
export class Comparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * The cap profile it is compared with.
     */
    readonly cap: Float64Array;
    readonly crossings: Float64Array;
    /**
     * u⋆ or w⋆ of the domain.
     */
    readonly domain: Float64Array;
    /**
     * Domain eigenvalue (zero for torsion comparisons).
     */
    readonly lambda: number;
    readonly lhs: number;
    /**
     * θ₁ of the comparison cap, or θ₀ of D⋆.
     */
    readonly radius: number;
    readonly rhs: number;
    readonly thetas: Float64Array;
}

export function capEigenfunction(n: number, theta1: number): Comparison;

export function chitiComparison(domain_json: string, p: number, q: number): Comparison;

export function torsionComparison(domain_json: string): Comparison;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_comparison_free: (a: number, b: number) => void;
    readonly capEigenfunction: (a: number, b: number) => [number, number, number];
    readonly chitiComparison: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly comparison_cap: (a: number) => [number, number];
    readonly comparison_crossings: (a: number) => [number, number];
    readonly comparison_domain: (a: number) => [number, number];
    readonly comparison_lambda: (a: number) => number;
    readonly comparison_lhs: (a: number) => number;
    readonly comparison_radius: (a: number) => number;
    readonly comparison_rhs: (a: number) => number;
    readonly comparison_thetas: (a: number) => [number, number];
    readonly torsionComparison: (a: number, b: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
