/* tslint:disable */
/* eslint-disable */

/**
 * `P`, `R`, `S_e` sampled on a uniform Gnt grid, plus the curve that
 * saturates the dominant term of the speed limit.
 */
export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly entropy: Float64Array;
    readonly gnt: Float64Array;
    readonly p: Float64Array;
    readonly r: Float64Array;
    readonly saturation: Float64Array;
}

export class SpeedLimit {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    ground_energy: number;
    mean_energy: number;
    spread: number;
    /**
     * First time `P` reaches epsilon, NaN if not within Gnt = 50.
     */
    t_reached: number;
    tau_limit: number;
    tau_mean_energy: number;
    tau_spread: number;
    readonly dominant: string;
}

/**
 * Gnt at which `R` first falls to `threshold`, one entry per size; NaN where
 * no crossing is found.
 */
export function crossing_scan(model: string, sizes: Uint32Array, threshold: number): Float64Array;

export function evolve(model: string, n: number, gnt_max: number, points: number): Curves;

export function speed_limit(model: string, n: number, epsilon: number): SpeedLimit;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly __wbg_get_speedlimit_ground_energy: (a: number) => number;
    readonly __wbg_get_speedlimit_mean_energy: (a: number) => number;
    readonly __wbg_get_speedlimit_spread: (a: number) => number;
    readonly __wbg_get_speedlimit_t_reached: (a: number) => number;
    readonly __wbg_get_speedlimit_tau_limit: (a: number) => number;
    readonly __wbg_get_speedlimit_tau_mean_energy: (a: number) => number;
    readonly __wbg_get_speedlimit_tau_spread: (a: number) => number;
    readonly __wbg_set_speedlimit_ground_energy: (a: number, b: number) => void;
    readonly __wbg_set_speedlimit_mean_energy: (a: number, b: number) => void;
    readonly __wbg_set_speedlimit_spread: (a: number, b: number) => void;
    readonly __wbg_set_speedlimit_t_reached: (a: number, b: number) => void;
    readonly __wbg_set_speedlimit_tau_limit: (a: number, b: number) => void;
    readonly __wbg_set_speedlimit_tau_mean_energy: (a: number, b: number) => void;
    readonly __wbg_set_speedlimit_tau_spread: (a: number, b: number) => void;
    readonly __wbg_speedlimit_free: (a: number, b: number) => void;
    readonly crossing_scan: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly curves_entropy: (a: number) => [number, number];
    readonly curves_gnt: (a: number) => [number, number];
    readonly curves_p: (a: number) => [number, number];
    readonly curves_r: (a: number) => [number, number];
    readonly curves_saturation: (a: number) => [number, number];
    readonly evolve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly speed_limit: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly speedlimit_dominant: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
