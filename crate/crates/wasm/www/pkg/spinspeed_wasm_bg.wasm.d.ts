/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const __wbg_get_speedlimit_ground_energy: (a: number) => number;
export const __wbg_get_speedlimit_mean_energy: (a: number) => number;
export const __wbg_get_speedlimit_spread: (a: number) => number;
export const __wbg_get_speedlimit_t_reached: (a: number) => number;
export const __wbg_get_speedlimit_tau_limit: (a: number) => number;
export const __wbg_get_speedlimit_tau_mean_energy: (a: number) => number;
export const __wbg_get_speedlimit_tau_spread: (a: number) => number;
export const __wbg_set_speedlimit_ground_energy: (a: number, b: number) => void;
export const __wbg_set_speedlimit_mean_energy: (a: number, b: number) => void;
export const __wbg_set_speedlimit_spread: (a: number, b: number) => void;
export const __wbg_set_speedlimit_t_reached: (a: number, b: number) => void;
export const __wbg_set_speedlimit_tau_limit: (a: number, b: number) => void;
export const __wbg_set_speedlimit_tau_mean_energy: (a: number, b: number) => void;
export const __wbg_set_speedlimit_tau_spread: (a: number, b: number) => void;
export const __wbg_speedlimit_free: (a: number, b: number) => void;
export const crossing_scan: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const curves_entropy: (a: number) => [number, number];
export const curves_gnt: (a: number) => [number, number];
export const curves_p: (a: number) => [number, number];
export const curves_r: (a: number) => [number, number];
export const curves_saturation: (a: number) => [number, number];
export const evolve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const speed_limit: (a: number, b: number, c: number, d: number) => [number, number, number];
export const speedlimit_dominant: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
