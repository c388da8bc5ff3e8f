/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_runsummary_free: (a: number, b: number) => void;
export const __wbg_truth_free: (a: number, b: number) => void;
export const beta_for_coverage: (a: number) => [number, number, number];
export const run_method: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const runsummary_evaluations: (a: number) => [number, number];
export const runsummary_labels: (a: number) => [number, number];
export const runsummary_misclassification: (a: number) => [number, number];
export const runsummary_predicted: (a: number) => [number, number];
export const runsummary_predicted_g1: (a: number) => [number, number];
export const runsummary_predicted_g2: (a: number) => [number, number];
export const runsummary_selected: (a: number) => [number, number];
export const runsummary_termination: (a: number) => [number, number];
export const runsummary_v_d: (a: number) => [number, number];
export const truth: (a: number, b: number) => [number, number, number];
export const truth_g1: (a: number) => [number, number];
export const truth_g2: (a: number) => [number, number];
export const truth_noise_sd: (a: number) => [number, number];
export const truth_pareto: (a: number) => [number, number];
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_exn_store: (a: number) => void;
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
