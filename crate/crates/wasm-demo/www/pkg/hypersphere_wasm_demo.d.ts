/* tslint:disable */
/* eslint-disable */

export function compare_methods(n: number, lambda: number, samples: number, seed: bigint): string;

export function convergence_scan(lambda: number, n_max: number): Float64Array;

/**
 * `[gamma_cr, lambda_cr]`
 */
export function critical(): Float64Array;

/**
 * Kebab-case names accepted by the native CLI, for labels.
 */
export function method_names(): string;

export function saddle_curve(lambda_min: number, lambda_max: number, count: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly compare_methods: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
    readonly convergence_scan: (a: number, b: number) => [number, number, number, number];
    readonly critical: () => [number, number];
    readonly method_names: () => [number, number];
    readonly saddle_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
