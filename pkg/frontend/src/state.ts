// Explorer state: which tab is active, the pending (edited) simulation form
// vs the submitted one, and request tokens that discard stale responses.
//
// Submit semantics: simulation inputs take effect only when Submit fires;
// analysis inputs re-run their panel immediately against the last submitted
// data.

import type { SimulateRequest } from './api.js';

export type TabId = 'ghbmp' | 'bm' | 'bbridge' | 'fbm' | 'fbbridge' | 'fgn' | 'data' | 'cluster';

export interface SimulationForm {
  kind: SimulateRequest['kind'];
  hurstExpr: string;
  hurstConst: number;
  points: number;
  truncJ: number;
  seed: number;
  tStart: number;
  tEnd: number;
  terminal: number;
}

export interface AnalysisForm {
  level: number;
  direction: 'greater' | 'lower';
  statPoints: number;
  period: number;
  N: number;
  span: number;
  showHurst: boolean;
  showLfd: boolean;
  covTheta: number | null;
}

export interface SeriesData {
  t: number[];
  x: number[];
  label: string;
  seed: number | null;
}

export function defaultSimulationForm(kind: SimulateRequest['kind']): SimulationForm {
  return {
    kind,
    hurstExpr: '0.4 - 0.25*sin(6*pi*t)',
    hurstConst: 0.7,
    points: 2049,
    truncJ: 12,
    seed: 1,
    tStart: 0,
    tEnd: 1,
    terminal: 0,
  };
}

export function defaultAnalysisForm(): AnalysisForm {
  return {
    level: 0,
    direction: 'greater',
    statPoints: 2000,
    period: 14,
    N: 64,
    span: 0.15,
    showHurst: true,
    showLfd: false,
    covTheta: null,
  };
}

export function simulationRequest(form: SimulationForm): SimulateRequest {
  const req: SimulateRequest = { kind: form.kind, points: form.points, seed: form.seed };
  if (form.kind === 'ghbmp') {
    req.hurst_expr = form.hurstExpr;
    req.trunc_J = form.truncJ;
  } else {
    req.t_start = form.tStart;
    req.t_end = form.tEnd;
  }
  if (form.kind === 'fbm' || form.kind === 'fbbridge' || form.kind === 'fgn') {
    req.hurst = form.hurstConst;
  }
  if (form.kind === 'bbridge' || form.kind === 'fbbridge') {
    req.terminal = form.terminal;
  }
  return req;
}

// One in-flight request per panel: each begin() invalidates prior tokens.
export class RequestGate {
  private token = 0;

  begin(): number {
    this.token += 1;
    return this.token;
  }

  isCurrent(token: number): boolean {
    return token === this.token;
  }
}

export interface ExplorerState {
  tab: TabId;
  forms: Map<TabId, SimulationForm>;
  analysis: AnalysisForm;
  submitted: SeriesData | null; // last submitted simulation or upload
  gates: { simulate: RequestGate; estimate: RequestGate; level: RequestGate; rsi: RequestGate; covariance: RequestGate; cluster: RequestGate };
}

export function initialState(): ExplorerState {
  const forms = new Map<TabId, SimulationForm>();
  for (const kind of ['ghbmp', 'bm', 'bbridge', 'fbm', 'fbbridge', 'fgn'] as const) {
    forms.set(kind, defaultSimulationForm(kind));
  }
  return {
    tab: 'ghbmp',
    forms,
    analysis: defaultAnalysisForm(),
    submitted: null,
    gates: {
      simulate: new RequestGate(),
      estimate: new RequestGate(),
      level: new RequestGate(),
      rsi: new RequestGate(),
      covariance: new RequestGate(),
      cluster: new RequestGate(),
    },
  };
}

export function lastDefined(values: (number | null)[]): number | null {
  for (let i = values.length - 1; i >= 0; i--) {
    const v = values[i];
    if (v !== null && v !== undefined && !Number.isNaN(v)) return v;
  }
  return null;
}
