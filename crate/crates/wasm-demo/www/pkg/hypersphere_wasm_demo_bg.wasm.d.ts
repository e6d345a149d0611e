/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const compare_methods: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
export const convergence_scan: (a: number, b: number) => [number, number, number, number];
export const critical: () => [number, number];
export const method_names: () => [number, number];
export const saddle_curve: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
