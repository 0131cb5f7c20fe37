// Typed client for the analysis service. All numbers displayed anywhere in
// the UI come from these endpoints; the client never computes statistics.

export interface SimulateRequest {
  kind: 'ghbmp' | 'bm' | 'bbridge' | 'fbm' | 'fbbridge' | 'fgn';
  hurst_expr?: string;
  hurst?: number;
  points: number;
  t_start?: number;
  t_end?: number;
  terminal?: number;
  trunc_J?: number;
  seed?: number;
}

export interface SimulateResponse {
  t: number[];
  x: number[];
  meta: { kind: string; seed: number; J: number };
}

export interface EstimateResponse {
  interval_start: number[];
  raw: number[];
  smoothed: number[];
  lfd_raw: number[];
  lfd_smoothed: number[];
  diagnostics: { degenerate: boolean[] };
  series: { t: number[]; x: number[] };
  meta: { N: number; Q: number; L: number; span: number; seed: number | null };
}

export interface CovarianceResponse {
  grid: number[];
  entries: number[][];
  meta: { kind: string; J: number; theta: number | null };
}

export interface MergeStep {
  left: number;
  right: number;
  height: number;
}

export interface ClusterResponse {
  cluster: number[];
  cluster_sizes: number[];
  centers: number[][];
  distances: number[];
  interval_starts: number[];
  smoothed_hurst: number[][];
  raw_hurst: number[][];
  merge_tree?: MergeStep[];
  wcss?: number;
  meta: { algo: string; seed: number | null };
}

export interface StatsResponse {
  results: {
    sojourn?: number;
    exc_area?: number;
    rsi?: (number | null)[];
    cross_count?: number;
    cross_rate?: number;
    cross_mean?: number;
    streaks?: { longest: number; mean: number };
    max?: { value: number; time: number };
    min?: { value: number; time: number };
  };
  meta: { A: number; direction: string; N: number };
}

export class ApiError extends Error {
  code: string;
  offset?: number;
  status: number;

  constructor(status: number, code: string, message: string, offset?: number) {
    super(message);
    this.status = status;
    this.code = code;
    this.offset = offset;
  }
}

async function post<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(path, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    let code = 'http';
    let message = `${response.status} ${response.statusText}`;
    let offset: number | undefined;
    try {
      const doc = await response.json();
      if (doc && doc.error) {
        code = doc.error.code ?? code;
        message = doc.error.message ?? message;
        offset = doc.error.offset;
      }
    } catch {
      // non-JSON error body; keep the HTTP status text
    }
    throw new ApiError(response.status, code, message, offset);
  }
  return response.json() as Promise<T>;
}

export const postSimulate = (req: SimulateRequest) => post<SimulateResponse>('/api/simulate', req);

export const postEstimate = (req: {
  series?: { t: number[]; x: number[] };
  simulate?: SimulateRequest;
  N?: number;
  Q?: number;
  L?: number;
  span?: number;
}) => post<EstimateResponse>('/api/estimate', req);

export const postCovariance = (req: {
  kind: 'theoretical' | 'empirical';
  hurst_expr?: string;
  points?: number;
  trunc_J?: number;
  theta?: number | null;
  t?: number[];
  series?: number[][];
}) => post<CovarianceResponse>('/api/covariance', req);

export const postCluster = (req: {
  realizations: { t: number[]; x: number[] }[];
  algo: 'hclust' | 'kmeans';
  k?: number;
  h?: number;
  dist_method?: string;
  linkage?: string;
  nstart?: number;
  seed?: number;
  N?: number;
}) => post<ClusterResponse>('/api/cluster', req);

export const postStats = (req: {
  series: { t: number[]; x: number[] };
  stats?: string[];
  A?: number;
  direction?: 'greater' | 'lower';
  N?: number;
  subI?: [number, number] | null;
  period?: number;
}) => post<StatsResponse>('/api/stats', req);
