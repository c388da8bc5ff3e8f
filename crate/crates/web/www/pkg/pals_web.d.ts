/* tslint:disable */
/* eslint-disable */

/**
 * Trace and final state of one optimizer run.
 */
export class RunSummary {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly evaluations: Uint32Array;
    /**
     * Final class per grid point for PAL and PALS: 0 Pareto, 1 dominated,
     * 2 unclassified. Empty for the other methods.
     */
    readonly labels: Uint8Array;
    readonly misclassification: Float64Array;
    /**
     * Final plug-in Pareto set.
     */
    readonly predicted: Uint32Array;
    readonly predicted_g1: Float64Array;
    readonly predicted_g2: Float64Array;
    /**
     * Selected grid index per iteration, -1 on the last.
     */
    readonly selected: Int32Array;
    readonly termination: string;
    /**
     * Per iteration, as fractions.
     */
    readonly v_d: Float64Array;
}

/**
 * Scaled noiseless objectives of a problem and its Pareto set.
 */
export class Truth {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly g1: Float64Array;
    readonly g2: Float64Array;
    /**
     * Noise standard deviation per objective, in scaled units.
     */
    readonly noise_sd: Float64Array;
    readonly pareto: Uint32Array;
}

/**
 * β whose rectangles have marginal coverage `p`.
 */
export function beta_for_coverage(p: number): number;

/**
 * Runs `method` (PRS, CoRS, ParEGO-EIm, PALS or PAL) on `problem`.
 */
export function run_method(problem: string, method: string, budget: number, batch: number, coverage: number, seed: number): RunSummary;

export function truth(problem: string): Truth;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_runsummary_free: (a: number, b: number) => void;
    readonly __wbg_truth_free: (a: number, b: number) => void;
    readonly beta_for_coverage: (a: number) => [number, number, number];
    readonly run_method: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly runsummary_evaluations: (a: number) => [number, number];
    readonly runsummary_labels: (a: number) => [number, number];
    readonly runsummary_misclassification: (a: number) => [number, number];
    readonly runsummary_predicted: (a: number) => [number, number];
    readonly runsummary_predicted_g1: (a: number) => [number, number];
    readonly runsummary_predicted_g2: (a: number) => [number, number];
    readonly runsummary_selected: (a: number) => [number, number];
    readonly runsummary_termination: (a: number) => [number, number];
    readonly runsummary_v_d: (a: number) => [number, number];
    readonly truth: (a: number, b: number) => [number, number, number];
    readonly truth_g1: (a: number) => [number, number];
    readonly truth_g2: (a: number) => [number, number];
    readonly truth_noise_sd: (a: number) => [number, number];
    readonly truth_pareto: (a: number) => [number, number];
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_exn_store: (a: number) => void;
    readonly __externref_table_alloc: () => number;
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
