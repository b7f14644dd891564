//! Numeric-to-symbolic abstraction: percentile thresholds and value banding,
//! bottom-up piecewise-linear segmentation for trends, and assembly of the
//! per-variable span lists into one validated state sequence.

use crate::error::{AbstractionError, ModelError};
use crate::model::{Mss, StateInterval, Symbol, VariableTable};

/// A named numeric series sampled at strictly increasing integer ticks.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSeries {
    name: String,
    samples: Vec<(i64, f64)>,
}

impl RawSeries {
    pub fn new(name: impl Into<String>, samples: Vec<(i64, f64)>) -> Result<Self, AbstractionError> {
        let name = name.into();
        if samples.is_empty() {
            return Err(AbstractionError::EmptySeries(name));
        }
        for (i, &(tick, value)) in samples.iter().enumerate() {
            if i > 0 && samples[i - 1].0 >= tick {
                return Err(AbstractionError::UnorderedTicks { variable: name, index: i });
            }
            if !value.is_finite() {
                return Err(AbstractionError::NonFiniteValue { variable: name, index: i });
            }
        }
        Ok(RawSeries { name, samples })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn samples(&self) -> &[(i64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Default percentile ranks for the four band thresholds.
pub const DEFAULT_PERCENTILES: [f64; 4] = [0.10, 0.25, 0.75, 0.90];

/// Nearest-rank percentiles over a pooled population: threshold i is the
/// value at 1-based rank ceil(qᵢ·N) in ascending order (rank floored at 1).
pub fn compute_thresholds(
    population: &[f64],
    percentiles: &[f64; 4],
) -> Result<[f64; 4], AbstractionError> {
    if population.is_empty() {
        return Err(AbstractionError::EmptyPopulation);
    }
    if population.iter().any(|v| !v.is_finite()) {
        return Err(AbstractionError::NonFinitePopulation);
    }
    let ok = percentiles.iter().all(|q| q.is_finite() && (0.0..=1.0).contains(q))
        && percentiles.windows(2).all(|w| w[0] <= w[1]);
    if !ok {
        return Err(AbstractionError::BadPercentiles);
    }
    let mut sorted = population.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("population is finite"));
    let n = sorted.len();
    let pick = |q: f64| {
        let rank = ((q * n as f64).ceil() as usize).max(1);
        sorted[rank - 1]
    };
    Ok([pick(percentiles[0]), pick(percentiles[1]), pick(percentiles[2]), pick(percentiles[3])])
}

/// Map one value into the five-band alphabet. Band edges: below t1 is very
/// low, [t1,t2) low, [t2,t3] normal, (t3,t4] high, above t4 very high.
pub fn band(value: f64, thresholds: &[f64; 4]) -> Symbol {
    if value < thresholds[0] {
        Symbol::VeryLow
    } else if value < thresholds[1] {
        Symbol::Low
    } else if value <= thresholds[2] {
        Symbol::Normal
    } else if value <= thresholds[3] {
        Symbol::High
    } else {
        Symbol::VeryHigh
    }
}

/// One symbolic interval over closed tick range `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolSpan {
    pub symbol: Symbol,
    pub start: i64,
    pub end: i64,
}

/// Band every sample, then collapse maximal runs of one symbol into spans
/// covering the run's first through last tick.
pub fn value_abstract(series: &RawSeries, thresholds: &[f64; 4]) -> Vec<SymbolSpan> {
    let symbols: Vec<Symbol> =
        series.samples().iter().map(|&(_, v)| band(v, thresholds)).collect();
    merge_runs(series, &symbols)
}

fn merge_runs(series: &RawSeries, symbols: &[Symbol]) -> Vec<SymbolSpan> {
    let samples = series.samples();
    let mut out: Vec<SymbolSpan> = Vec::new();
    for (i, &sym) in symbols.iter().enumerate() {
        match out.last_mut() {
            Some(span) if span.symbol == sym => span.end = samples[i].0,
            _ => out.push(SymbolSpan { symbol: sym, start: samples[i].0, end: samples[i].0 }),
        }
    }
    out
}

/// Bottom-up segmentation settings: `max_error` is the admissible residual
/// per sample of a least-squares line; slopes within `±steady_slope` count
/// as steady.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentationParams {
    pub max_error: f64,
    pub steady_slope: f64,
}

impl SegmentationParams {
    pub fn new(max_error: f64, steady_slope: f64) -> Result<Self, AbstractionError> {
        if !(max_error.is_finite() && max_error >= 0.0)
            || !(steady_slope.is_finite() && steady_slope >= 0.0)
        {
            return Err(AbstractionError::BadSegmentationParams);
        }
        Ok(SegmentationParams { max_error, steady_slope })
    }
}

/// Running sums for one segment of consecutive samples; lets merged residuals
/// and slopes come out of closed forms instead of refits.
#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: usize,
    hi: usize,
    n: f64,
    st: f64,
    sv: f64,
    stt: f64,
    stv: f64,
    svv: f64,
}

impl Segment {
    fn single(i: usize, tick: i64, value: f64) -> Self {
        let t = tick as f64;
        Segment { lo: i, hi: i, n: 1.0, st: t, sv: value, stt: t * t, stv: t * value, svv: value * value }
    }

    fn merged(a: &Segment, b: &Segment) -> Self {
        Segment {
            lo: a.lo,
            hi: b.hi,
            n: a.n + b.n,
            st: a.st + b.st,
            sv: a.sv + b.sv,
            stt: a.stt + b.stt,
            stv: a.stv + b.stv,
            svv: a.svv + b.svv,
        }
    }

    /// Residual sum of squares of the least-squares line through the segment.
    fn ssr(&self) -> f64 {
        if self.n < 2.0 {
            return 0.0;
        }
        let ctt = self.stt - self.st * self.st / self.n;
        let ctv = self.stv - self.st * self.sv / self.n;
        let cvv = self.svv - self.sv * self.sv / self.n;
        (cvv - ctv * ctv / ctt).max(0.0)
    }

    fn slope(&self) -> f64 {
        if self.n < 2.0 {
            return 0.0;
        }
        let ctt = self.stt - self.st * self.st / self.n;
        let ctv = self.stv - self.st * self.sv / self.n;
        ctv / ctt
    }
}

/// Segment the series bottom-up from single-sample segments, merging the
/// cheapest adjacent pair (leftmost on ties) while the merged residual stays
/// within `max_error` per sample, then label each segment by its slope and
/// collapse equal-label runs into spans.
///
/// Starting from single samples rather than pairs matters: with a zero error
/// budget only exact-fit merges happen, and a pair seeding can lock a break
/// inside what should be one segment.
pub fn trend_abstract(series: &RawSeries, params: &SegmentationParams) -> Vec<SymbolSpan> {
    let samples = series.samples();
    let mut segs: Vec<Segment> = samples
        .iter()
        .enumerate()
        .map(|(i, &(t, v))| Segment::single(i, t, v))
        .collect();

    loop {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..segs.len().saturating_sub(1) {
            let m = Segment::merged(&segs[i], &segs[i + 1]);
            let cost = m.ssr();
            if cost <= params.max_error * m.n + 1e-9
                && best.is_none_or(|(_, c)| cost < c)
            {
                best = Some((i, cost));
            }
        }
        match best {
            Some((i, _)) => {
                segs[i] = Segment::merged(&segs[i], &segs[i + 1]);
                segs.remove(i + 1);
            }
            None => break,
        }
    }

    let symbols: Vec<Symbol> = segs
        .iter()
        .flat_map(|s| {
            let slope = s.slope();
            let sym = if slope > params.steady_slope {
                Symbol::Increasing
            } else if slope < -params.steady_slope {
                Symbol::Decreasing
            } else {
                Symbol::Steady
            };
            std::iter::repeat_n(sym, s.hi - s.lo + 1)
        })
        .collect();
    merge_runs(series, &symbols)
}

/// Assemble per-variable span lists into one state sequence: intern names,
/// lift spans to intervals, and order everything by (start, end, variable
/// label, symbol). Structural problems (reserved names, per-variable overlap
/// or symbol repeats) surface as errors.
pub fn build_mss(
    vars: &mut VariableTable,
    per_variable: &[(String, Vec<SymbolSpan>)],
) -> Result<Mss, ModelError> {
    let mut intervals = Vec::new();
    for (name, spans) in per_variable {
        let var = vars.intern(name)?;
        for span in spans {
            intervals.push(StateInterval::new(var, span.symbol, span.start, span.end)?);
        }
    }
    intervals.sort_by(|a, b| {
        (a.start, a.end, vars.name(a.var), a.symbol).cmp(&(b.start, b.end, vars.name(b.var), b.symbol))
    });
    Mss::new(intervals)
}
