// Hurst-function presets offered next to the free-text expression box:
// a constant, a decreasing linear trend, an oscillation, and a continuous
// ramp approximation of a step function.

export interface HurstPreset {
  label: string;
  expr: string;
}

export const HURST_PRESETS: HurstPreset[] = [
  { label: 'constant 0.3', expr: '0.3' },
  { label: 'linear 0.8 - 0.55t', expr: '0.8 - 0.55*t' },
  { label: 'oscillating', expr: '0.4 - 0.25*sin(6*pi*t)' },
  {
    label: 'step via ramp',
    expr: 'ifelse(t <= 0.5 - 1/28, 0.2, ifelse(t <= 0.5 + 1/28, 8.4*t - 3.7, 0.8))',
  },
];
