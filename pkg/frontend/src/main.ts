// Explorer UI: tabs per process family plus a user-data tab and a
// clustering tab. Simulation forms apply on Submit; analysis panels
// auto-refresh against the last submitted series. Every figure has a CSV
// export of its underlying data, and every displayed number comes from the
// HTTP API.

import {
  ApiError,
  postCluster,
  postCovariance,
  postEstimate,
  postSimulate,
  postStats,
  type ClusterResponse,
  type EstimateResponse,
  type SimulateRequest,
  type StatsResponse,
} from './api.js';
import { dendrogram, heatmap, levelBands, lineChart, rsiPanels } from './charts.js';
import { matrixToCsv, parseSeriesCsv, seriesToCsv, tableToCsv } from './csv.js';
import { HURST_PRESETS } from './presets.js';
import {
  initialState,
  lastDefined,
  simulationRequest,
  type ExplorerState,
  type SimulationForm,
  type TabId,
} from './state.js';

const PROCESS_TABS: { id: TabId; label: string }[] = [
  { id: 'ghbmp', label: 'Multifractional' },
  { id: 'bm', label: 'Brownian' },
  { id: 'bbridge', label: 'Brownian bridge' },
  { id: 'fbm', label: 'Fractional Bm' },
  { id: 'fbbridge', label: 'Fractional bridge' },
  { id: 'fgn', label: 'Fractional noise' },
  { id: 'data', label: 'Your data' },
  { id: 'cluster', label: 'Clustering' },
];

export function initExplorer(root: HTMLElement): ExplorerState {
  const state = initialState();
  root.innerHTML = `
    <header class="masthead">
      <h1>Multifractional process explorer</h1>
      <p>Simulate rough Gaussian paths, estimate their time-varying roughness, and inspect level statistics.</p>
    </header>
    <nav id="tabs" class="tabs"></nav>
    <section id="sim-panel" class="panel"></section>
    <section id="analysis-panel" class="panel"></section>
  `;
  renderTabs(root, state);
  renderSimPanel(root, state);
  renderAnalysisPanel(root, state);
  return state;
}

function renderTabs(root: HTMLElement, state: ExplorerState) {
  const nav = root.querySelector('#tabs')!;
  nav.innerHTML = PROCESS_TABS.map(
    (t) =>
      `<button class="tab${t.id === state.tab ? ' active' : ''}" data-tab="${t.id}">${t.label}</button>`,
  ).join('');
  nav.querySelectorAll<HTMLButtonElement>('button[data-tab]').forEach((btn) => {
    btn.addEventListener('click', () => {
      state.tab = btn.dataset.tab as TabId;
      renderTabs(root, state);
      renderSimPanel(root, state);
      renderAnalysisPanel(root, state);
    });
  });
}

function field(label: string, input: string): string {
  return `<label class="field"><span>${label}</span>${input}</label>`;
}

function renderSimPanel(root: HTMLElement, state: ExplorerState) {
  const panel = root.querySelector<HTMLElement>('#sim-panel')!;
  if (state.tab === 'data') {
    renderUploadPanel(panel, root, state);
    return;
  }
  if (state.tab === 'cluster') {
    renderClusterPanel(panel, state);
    return;
  }
  const form = state.forms.get(state.tab)!;
  const isGhbmp = form.kind === 'ghbmp';
  const isBridge = form.kind === 'bbridge' || form.kind === 'fbbridge';
  const needsConstH = form.kind === 'fbm' || form.kind === 'fbbridge' || form.kind === 'fgn';
  panel.innerHTML = `
    <h2>Simulation</h2>
    <form id="sim-form" class="controls">
      ${isGhbmp ? field('Hurst expression in t', `<input id="f-hurst" type="text" value="${escAttr(form.hurstExpr)}" size="34">`) : ''}
      ${isGhbmp ? `<div class="presets">${HURST_PRESETS.map((p, i) => `<button type="button" class="preset" data-preset="${i}">${p.label}</button>`).join('')}</div>` : ''}
      ${needsConstH ? field('Hurst value', `<input id="f-hconst" type="number" step="0.05" min="0.01" max="0.99" value="${form.hurstConst}">`) : ''}
      ${field('Points', `<input id="f-points" type="number" min="2" value="${form.points}">`)}
      ${isGhbmp ? field('Truncation level J', `<input id="f-trunc" type="number" min="0" max="26" value="${form.truncJ}">`) : ''}
      ${!isGhbmp && form.kind !== 'fgn' ? field('End time', `<input id="f-end" type="number" step="0.5" value="${form.tEnd}">`) : ''}
      ${isBridge ? field('Terminal value', `<input id="f-terminal" type="number" step="0.1" value="${form.terminal}">`) : ''}
      ${field('Seed', `<input id="f-seed" type="number" min="0" value="${form.seed}">`)}
      <button type="submit" id="submit-sim">Submit</button>
    </form>
    <p id="sim-error" class="error" hidden></p>
    <div id="series-chart" class="chart-slot"></div>
    <button id="export-series" hidden>Export series CSV</button>
  `;
  panel.querySelectorAll<HTMLButtonElement>('.preset').forEach((btn) => {
    btn.addEventListener('click', () => {
      const preset = HURST_PRESETS[Number(btn.dataset.preset)];
      const input = panel.querySelector<HTMLInputElement>('#f-hurst')!;
      input.value = preset.expr;
      // editing the form does not trigger a simulation; Submit does
    });
  });
  panel.querySelector('#sim-form')!.addEventListener('submit', (ev) => {
    ev.preventDefault();
    readForm(panel, form);
    void submitSimulation(root, state, form);
  });
  if (state.submitted) {
    drawSeries(panel, state);
  }
}

function readForm(panel: HTMLElement, form: SimulationForm) {
  const val = (id: string) => panel.querySelector<HTMLInputElement>(id)?.value;
  form.hurstExpr = val('#f-hurst') ?? form.hurstExpr;
  form.hurstConst = Number(val('#f-hconst') ?? form.hurstConst);
  form.points = Number(val('#f-points') ?? form.points);
  form.truncJ = Number(val('#f-trunc') ?? form.truncJ);
  form.tEnd = Number(val('#f-end') ?? form.tEnd);
  form.terminal = Number(val('#f-terminal') ?? form.terminal);
  form.seed = Number(val('#f-seed') ?? form.seed);
}

async function submitSimulation(root: HTMLElement, state: ExplorerState, form: SimulationForm) {
  const panel = root.querySelector<HTMLElement>('#sim-panel')!;
  const errorBox = panel.querySelector<HTMLElement>('#sim-error')!;
  errorBox.hidden = true;
  const token = state.gates.simulate.begin();
  try {
    const req: SimulateRequest = simulationRequest(form);
    const res = await postSimulate(req);
    if (!state.gates.simulate.isCurrent(token)) return;
    state.submitted = {
      t: res.t,
      x: res.x,
      label: `${form.kind} (seed ${res.meta.seed})`,
      seed: res.meta.seed,
    };
    drawSeries(panel, state);
    refreshAnalysis(root, state);
  } catch (err) {
    if (!state.gates.simulate.isCurrent(token)) return;
    errorBox.hidden = false;
    errorBox.textContent = describeError(err);
    if (err instanceof ApiError && err.offset !== undefined) {
      const input = panel.querySelector<HTMLInputElement>('#f-hurst');
      if (input) {
        input.focus();
        input.setSelectionRange(err.offset, err.offset);
      }
    }
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return err.offset !== undefined
      ? `${err.message} (at offset ${err.offset})`
      : `${err.code}: ${err.message}`;
  }
  return String(err);
}

function drawSeries(panel: HTMLElement, state: ExplorerState) {
  const slot = panel.querySelector<HTMLElement>('#series-chart');
  const data = state.submitted;
  if (!slot || !data) return;
  slot.innerHTML = lineChart([{ x: data.t, y: data.x, label: data.label }], {
    title: 'realization',
  });
  const btn = panel.querySelector<HTMLButtonElement>('#export-series');
  if (btn) {
    btn.hidden = false;
    btn.onclick = () => download('series.csv', seriesToCsv(data.t, data.x));
  }
}

function renderUploadPanel(panel: HTMLElement, root: HTMLElement, state: ExplorerState) {
  panel.innerHTML = `
    <h2>Upload a time series</h2>
    <p>CSV with headers: time in the first column, values in the second.</p>
    <input type="file" id="upload" accept=".csv,text/csv">
    <p id="upload-warning" class="warning" hidden></p>
    <ul id="upload-issues" class="error"></ul>
    <div id="series-chart" class="chart-slot"></div>
    <button id="export-series" hidden>Export series CSV</button>
  `;
  panel.querySelector<HTMLInputElement>('#upload')!.addEventListener('change', async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    const text = await file.text();
    acceptUploadText(root, state, text);
  });
  if (state.submitted) drawSeries(panel, state);
}

export function acceptUploadText(root: HTMLElement, state: ExplorerState, text: string) {
  const panel = root.querySelector<HTMLElement>('#sim-panel')!;
  const issuesBox = panel.querySelector<HTMLElement>('#upload-issues')!;
  const warningBox = panel.querySelector<HTMLElement>('#upload-warning')!;
  const result = parseSeriesCsv(text);
  issuesBox.innerHTML = result.issues
    .map((issue) => `<li>row ${issue.row}: ${issue.message}</li>`)
    .join('');
  warningBox.hidden = result.warning === null;
  warningBox.textContent = result.warning ?? '';
  if (result.series) {
    state.submitted = { t: result.series.t, x: result.series.x, label: 'uploaded series', seed: null };
    drawSeries(panel, state);
    refreshAnalysis(root, state);
  }
}

// ---------------------------------------------------------------------------
// Analysis panels
// ---------------------------------------------------------------------------

function renderAnalysisPanel(root: HTMLElement, state: ExplorerState) {
  const panel = root.querySelector<HTMLElement>('#analysis-panel')!;
  if (state.tab === 'cluster') {
    panel.innerHTML = '';
    return;
  }
  const a = state.analysis;
  panel.innerHTML = `
    <h2>Analysis</h2>
    <p id="analysis-note" ${state.submitted ? 'hidden' : ''}>Submit a simulation or upload data to analyze it.</p>
    <div class="analysis-grid">
      <div class="card" id="roughness-card">
        <h3>Roughness</h3>
        <div class="controls">
          ${field('Subintervals N', `<input id="a-n" type="number" min="2" value="${a.N}">`)}
          ${field('Smoothing span', `<input id="a-span" type="number" step="0.05" min="0.05" max="1" value="${a.span}">`)}
          ${field('Hurst overlay', `<input id="a-show-h" type="checkbox" ${a.showHurst ? 'checked' : ''}>`)}
          ${field('Fractal dimension', `<input id="a-show-d" type="checkbox" ${a.showLfd ? 'checked' : ''}>`)}
        </div>
        <p id="estimate-error" class="error" hidden></p>
        <div id="estimate-chart" class="chart-slot"></div>
        <button id="export-estimates" hidden>Export estimates CSV</button>
      </div>
      <div class="card" id="level-card">
        <h3>Level statistics</h3>
        <div class="controls">
          ${field('Level A', `<input id="a-level" type="range" min="-3" max="3" step="0.01" value="${a.level}"> <span id="a-level-value">${a.level}</span>`)}
          ${field('Direction', `<select id="a-direction"><option value="greater" ${a.direction === 'greater' ? 'selected' : ''}>greater</option><option value="lower" ${a.direction === 'lower' ? 'selected' : ''}>lower</option></select>`)}
        </div>
        <dl id="level-stats" class="stat-list"></dl>
        <div id="level-chart" class="chart-slot"></div>
        <button id="export-level" hidden>Export shaded series CSV</button>
      </div>
      <div class="card" id="rsi-card">
        <h3>Relative strength index</h3>
        <div class="controls">
          ${field('Period', `<input id="a-period" type="number" min="1" value="${a.period}">`)}
        </div>
        <p id="rsi-final"></p>
        <div id="rsi-chart" class="chart-slot"></div>
        <button id="export-rsi" hidden>Export RSI CSV</button>
      </div>
      ${state.tab === 'ghbmp' ? covarianceCard(a.covTheta) : ''}
    </div>
  `;
  const rerun = () => {
    readAnalysisForm(panel, state);
    refreshAnalysis(root, state);
  };
  for (const id of ['#a-n', '#a-span', '#a-show-h', '#a-show-d', '#a-direction', '#a-period']) {
    panel.querySelector(id)?.addEventListener('change', rerun);
  }
  const slider = panel.querySelector<HTMLInputElement>('#a-level');
  slider?.addEventListener('input', () => {
    panel.querySelector('#a-level-value')!.textContent = slider.value;
    rerun();
  });
  panel.querySelector('#cov-run')?.addEventListener('click', () => {
    readAnalysisForm(panel, state);
    void refreshCovariance(root, state);
  });
  if (state.submitted) {
    refreshAnalysis(root, state);
  }
}

function covarianceCard(theta: number | null): string {
  return `
    <div class="card" id="cov-card">
      <h3>Theoretical covariance</h3>
      <div class="controls">
        ${field('Grid points', `<input id="cov-points" type="number" min="2" max="201" value="61">`)}
        ${field('Truncation J', `<input id="cov-trunc" type="number" min="0" max="14" value="8">`)}
        ${field('Smoothing theta', `<input id="cov-theta" type="number" step="0.01" min="0" value="${theta ?? ''}" placeholder="none">`)}
        <button type="button" id="cov-run">Compute</button>
      </div>
      <div id="cov-chart" class="chart-slot"></div>
      <button id="export-cov" hidden>Export matrix CSV</button>
    </div>
  `;
}

function readAnalysisForm(panel: HTMLElement, state: ExplorerState) {
  const a = state.analysis;
  const num = (id: string, fallback: number) => {
    const v = panel.querySelector<HTMLInputElement>(id)?.value;
    const parsed = Number(v);
    return v === undefined || v === '' || Number.isNaN(parsed) ? fallback : parsed;
  };
  a.N = Math.max(2, Math.round(num('#a-n', a.N)));
  a.span = num('#a-span', a.span);
  a.level = num('#a-level', a.level);
  a.period = Math.max(1, Math.round(num('#a-period', a.period)));
  a.showHurst = panel.querySelector<HTMLInputElement>('#a-show-h')?.checked ?? a.showHurst;
  a.showLfd = panel.querySelector<HTMLInputElement>('#a-show-d')?.checked ?? a.showLfd;
  const dir = panel.querySelector<HTMLSelectElement>('#a-direction')?.value;
  if (dir === 'greater' || dir === 'lower') a.direction = dir;
  const theta = panel.querySelector<HTMLInputElement>('#cov-theta')?.value;
  a.covTheta = theta ? Number(theta) : null;
}

function refreshAnalysis(root: HTMLElement, state: ExplorerState) {
  if (!state.submitted) return;
  const note = root.querySelector<HTMLElement>('#analysis-note');
  if (note) note.hidden = true;
  void refreshEstimates(root, state);
  void refreshLevelStats(root, state);
  void refreshRsi(root, state);
}

async function refreshEstimates(root: HTMLElement, state: ExplorerState) {
  const data = state.submitted!;
  const slot = root.querySelector<HTMLElement>('#estimate-chart');
  const errBox = root.querySelector<HTMLElement>('#estimate-error');
  if (!slot) return;
  const token = state.gates.estimate.begin();
  try {
    const res: EstimateResponse = await postEstimate({
      series: { t: data.t, x: data.x },
      N: state.analysis.N,
      span: state.analysis.span,
    });
    if (!state.gates.estimate.isCurrent(token)) return;
    if (errBox) errBox.hidden = true;
    drawEstimates(root, state, res);
  } catch (err) {
    if (!state.gates.estimate.isCurrent(token)) return;
    if (errBox) {
      errBox.hidden = false;
      errBox.textContent = describeError(err);
    }
    slot.innerHTML = '';
  }
}

function drawEstimates(root: HTMLElement, state: ExplorerState, res: EstimateResponse) {
  const slot = root.querySelector<HTMLElement>('#estimate-chart')!;
  const data = state.submitted!;
  const curves = [{ x: data.t, y: data.x, label: data.label }];
  if (state.analysis.showHurst) {
    curves.push({ x: res.interval_start, y: res.raw, label: 'hurst raw', axis: 'right' } as never);
    curves.push({ x: res.interval_start, y: res.smoothed, label: 'hurst smoothed', axis: 'right', width: 2 } as never);
  }
  if (state.analysis.showLfd) {
    curves.push({ x: res.interval_start, y: res.lfd_smoothed, label: 'fractal dim smoothed', axis: 'right' } as never);
  }
  const degenerate = res.diagnostics.degenerate.filter(Boolean).length;
  slot.innerHTML =
    lineChart(curves, { title: 'series with roughness overlays' }) +
    (degenerate > 0 ? `<p class="warning">${degenerate} subinterval(s) had degenerate variations</p>` : '');
  const btn = root.querySelector<HTMLButtonElement>('#export-estimates');
  if (btn) {
    btn.hidden = false;
    btn.onclick = () =>
      download(
        'estimates.csv',
        tableToCsv(
          ['interval_start', 'raw', 'smoothed', 'lfd_raw', 'lfd_smoothed'],
          [res.interval_start, res.raw, res.smoothed, res.lfd_raw, res.lfd_smoothed],
        ),
      );
  }
}

async function refreshLevelStats(root: HTMLElement, state: ExplorerState) {
  const data = state.submitted!;
  const slot = root.querySelector<HTMLElement>('#level-chart');
  if (!slot) return;
  const token = state.gates.level.begin();
  const a = state.analysis;
  try {
    const res: StatsResponse = await postStats({
      series: { t: data.t, x: data.x },
      stats: ['sojourn', 'exc_area', 'crossings', 'streaks', 'extrema'],
      A: a.level,
      direction: a.direction,
      N: a.statPoints,
    });
    if (!state.gates.level.isCurrent(token)) return;
    const r = res.results;
    const dl = root.querySelector<HTMLElement>('#level-stats')!;
    dl.innerHTML = [
      ['sojourn time', r.sojourn],
      ['excursion area', r.exc_area],
      ['crossings', r.cross_count],
      ['crossing rate', r.cross_rate],
      ['longest streak', r.streaks?.longest],
      ['mean streak', r.streaks?.mean],
      ['maximum', r.max ? `${round6(r.max.value)} @ t=${round6(r.max.time)}` : undefined],
      ['minimum', r.min ? `${round6(r.min.value)} @ t=${round6(r.min.time)}` : undefined],
    ]
      .filter(([, v]) => v !== undefined)
      .map(([k, v]) => `<div><dt>${k}</dt><dd>${typeof v === 'number' ? round6(v) : v}</dd></div>`)
      .join('');
    const bands = levelBands(data.t, data.x, a.level, a.direction);
    slot.innerHTML = lineChart(
      [{ x: data.t, y: data.x, label: data.label }],
      { title: `excursion region (${a.direction} than A=${round6(a.level)})`, bands, hlines: [{ y: a.level, label: 'A' }] },
    );
    const btn = root.querySelector<HTMLButtonElement>('#export-level');
    if (btn) {
      btn.hidden = false;
      btn.onclick = () => download('series.csv', seriesToCsv(data.t, data.x));
    }
  } catch {
    if (state.gates.level.isCurrent(token)) slot.innerHTML = '';
  }
}

async function refreshRsi(root: HTMLElement, state: ExplorerState) {
  const data = state.submitted!;
  const slot = root.querySelector<HTMLElement>('#rsi-chart');
  if (!slot) return;
  const token = state.gates.rsi.begin();
  try {
    const res = await postStats({
      series: { t: data.t, x: data.x },
      stats: ['rsi'],
      period: state.analysis.period,
    });
    if (!state.gates.rsi.isCurrent(token)) return;
    const rsi = res.results.rsi ?? [];
    const finalValue = lastDefined(rsi);
    const finalBox = root.querySelector<HTMLElement>('#rsi-final')!;
    finalBox.innerHTML =
      finalValue === null
        ? 'not enough points for the chosen period'
        : `final RSI: <strong id="rsi-final-value">${round6(finalValue)}</strong>`;
    slot.innerHTML = rsiPanels(data.t, data.x, rsi);
    const btn = root.querySelector<HTMLButtonElement>('#export-rsi');
    if (btn) {
      btn.hidden = false;
      btn.onclick = () =>
        download(
          'rsi.csv',
          tableToCsv(['t', 'price', 'rsi'], [data.t, data.x, rsi.map((v) => v ?? NaN)]),
        );
    }
  } catch (err) {
    if (!state.gates.rsi.isCurrent(token)) return;
    const finalBox = root.querySelector<HTMLElement>('#rsi-final');
    if (finalBox) finalBox.textContent = describeError(err);
    slot.innerHTML = '';
  }
}

async function refreshCovariance(root: HTMLElement, state: ExplorerState) {
  const slot = root.querySelector<HTMLElement>('#cov-chart');
  if (!slot) return;
  const form = state.forms.get('ghbmp')!;
  const points = Number(root.querySelector<HTMLInputElement>('#cov-points')?.value ?? 61);
  const trunc = Number(root.querySelector<HTMLInputElement>('#cov-trunc')?.value ?? 8);
  const token = state.gates.covariance.begin();
  try {
    const res = await postCovariance({
      kind: 'theoretical',
      hurst_expr: form.hurstExpr,
      points,
      trunc_J: trunc,
      theta: state.analysis.covTheta,
    });
    if (!state.gates.covariance.isCurrent(token)) return;
    slot.innerHTML = heatmap(res.grid, res.entries, 'covariance of the current Hurst expression');
    const btn = root.querySelector<HTMLButtonElement>('#export-cov');
    if (btn) {
      btn.hidden = false;
      btn.onclick = () => download('covariance.csv', matrixToCsv(res.grid, res.entries));
    }
  } catch (err) {
    if (state.gates.covariance.isCurrent(token)) slot.innerHTML = `<p class="error">${describeError(err)}</p>`;
  }
}

// ---------------------------------------------------------------------------
// Clustering tab
// ---------------------------------------------------------------------------

function renderClusterPanel(panel: HTMLElement, state: ExplorerState) {
  panel.innerHTML = `
    <h2>Cluster simulated realizations by roughness</h2>
    <form id="cluster-form" class="controls">
      ${field('Family 1', `<input id="c-h1" type="text" value="0.3" size="26">`)}
      ${field('Family 2', `<input id="c-h2" type="text" value="0.8 - 0.55*t" size="26">`)}
      ${field('Family 3', `<input id="c-h3" type="text" value="0.4 - 0.25*sin(6*pi*t)" size="26">`)}
      ${field('Per family', `<input id="c-count" type="number" min="1" max="10" value="3">`)}
      ${field('Points', `<input id="c-points" type="number" min="513" value="2049">`)}
      ${field('Truncation J', `<input id="c-trunc" type="number" min="4" max="16" value="12">`)}
      ${field('Seed', `<input id="c-seed" type="number" min="0" value="1">`)}
      ${field('Algorithm', `<select id="c-algo"><option value="hclust">hierarchical</option><option value="kmeans">k-means</option></select>`)}
      <button type="submit">Simulate &amp; cluster</button>
    </form>
    <p id="cluster-status"></p>
    <p id="cluster-error" class="error" hidden></p>
    <div id="cluster-table"></div>
    <div id="cluster-dendrogram" class="chart-slot"></div>
    <div id="cluster-curves" class="chart-slot"></div>
    <button id="export-cluster" hidden>Export features CSV</button>
    <button id="export-tree" hidden>Export merge tree CSV</button>
  `;
  panel.querySelector('#cluster-form')!.addEventListener('submit', (ev) => {
    ev.preventDefault();
    void runClustering(panel, state);
  });
}

async function runClustering(panel: HTMLElement, state: ExplorerState) {
  const val = (id: string) => panel.querySelector<HTMLInputElement | HTMLSelectElement>(id)!.value;
  const status = panel.querySelector<HTMLElement>('#cluster-status')!;
  const errBox = panel.querySelector<HTMLElement>('#cluster-error')!;
  errBox.hidden = true;
  const exprs = [val('#c-h1'), val('#c-h2'), val('#c-h3')].filter((e) => e.trim() !== '');
  const perFamily = Number(val('#c-count'));
  const points = Number(val('#c-points'));
  const truncJ = Number(val('#c-trunc'));
  const seed = Number(val('#c-seed'));
  const algo = val('#c-algo') as 'hclust' | 'kmeans';
  const token = state.gates.cluster.begin();
  try {
    status.textContent = 'simulating…';
    const realizations: { t: number[]; x: number[] }[] = [];
    for (let fam = 0; fam < exprs.length; fam++) {
      for (let rep = 0; rep < perFamily; rep++) {
        const res = await postSimulate({
          kind: 'ghbmp',
          hurst_expr: exprs[fam],
          points,
          trunc_J: truncJ,
          seed: seed + 1000 * fam + rep,
        });
        if (!state.gates.cluster.isCurrent(token)) return;
        realizations.push({ t: res.t, x: res.x });
      }
    }
    status.textContent = 'clustering…';
    const res = await postCluster({
      realizations,
      algo,
      k: exprs.length,
      nstart: 5,
      seed,
      N: 64,
    });
    if (!state.gates.cluster.isCurrent(token)) return;
    status.textContent = `cluster sizes: ${res.cluster_sizes.join(', ')}`;
    drawClusterResult(panel, res);
  } catch (err) {
    if (!state.gates.cluster.isCurrent(token)) return;
    status.textContent = '';
    errBox.hidden = false;
    errBox.textContent = describeError(err);
  }
}

function drawClusterResult(panel: HTMLElement, res: ClusterResponse) {
  const table = panel.querySelector<HTMLElement>('#cluster-table')!;
  table.innerHTML =
    '<table><thead><tr><th>item</th><th>cluster</th><th>distance from center</th></tr></thead><tbody>' +
    res.cluster
      .map((c, i) => `<tr><td>${i + 1}</td><td>${c}</td><td>${round6(res.distances[i])}</td></tr>`)
      .join('') +
    '</tbody></table>';
  const dendro = panel.querySelector<HTMLElement>('#cluster-dendrogram')!;
  dendro.innerHTML = res.merge_tree
    ? dendrogram(res.cluster.length, res.merge_tree)
    : '';
  const treeBtn = panel.querySelector<HTMLButtonElement>('#export-tree');
  if (treeBtn) {
    treeBtn.hidden = !res.merge_tree;
    if (res.merge_tree) {
      const steps = res.merge_tree;
      treeBtn.onclick = () =>
        download(
          'merge-tree.csv',
          ['left,right,height']
            .concat(steps.map((s) => `${s.left},${s.right},${s.height}`))
            .join('\n') + '\n',
        );
    }
  }
  const curvesSlot = panel.querySelector<HTMLElement>('#cluster-curves')!;
  const palette = ['#1f77b4', '#d62728', '#2ca02c', '#ff7f0e', '#9467bd'];
  curvesSlot.innerHTML = lineChart(
    res.smoothed_hurst.map((row, i) => ({
      x: res.interval_starts,
      y: row,
      label: `item ${i + 1} (cluster ${res.cluster[i]})`,
      color: palette[(res.cluster[i] - 1) % palette.length],
    })),
    { title: 'smoothed roughness curves by cluster' },
  );
  const btn = panel.querySelector<HTMLButtonElement>('#export-cluster');
  if (btn) {
    btn.hidden = false;
    btn.onclick = () =>
      download(
        'cluster-features.csv',
        ['interval_start,' + res.smoothed_hurst.map((_, i) => `item_${i + 1}`).join(',')]
          .concat(
            res.interval_starts.map(
              (s, j) => `${s},` + res.smoothed_hurst.map((row) => row[j]).join(','),
            ),
          )
          .join('\n') + '\n',
      );
  }
}

// ---------------------------------------------------------------------------

function round6(v: number): number {
  return Math.round(v * 1e6) / 1e6;
}

function escAttr(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/"/g, '&quot;').replace(/</g, '&lt;');
}

function download(filename: string, text: string) {
  const blob = new Blob([text], { type: 'text/csv' });
  const url = URL.createObjectURL(blob);
  const a = document.createElement('a');
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

// Browser entry point; tests import initExplorer directly instead.
const appRoot = typeof document !== 'undefined' ? document.getElementById('app') : null;
if (appRoot) {
  initExplorer(appRoot);
}
