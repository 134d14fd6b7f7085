//! Verification suites over a pair's filtration. Each returns a [`Report`]
//! with one record per individual check.

use crate::algebra::KleinPair;
use crate::error::{Error, Result};
use crate::filtration::{effectivity_radical, weisfeiler_filtration, Filtration};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::{format_combination, is_zero_vector, Vector};
use crate::series::{classify, lower_central_series, lower_central_series_of};

fn require_effective(pair: &KleinPair) -> Result<()> {
    let radical = effectivity_radical(pair);
    if radical.is_zero() {
        Ok(())
    } else {
        Err(Error::NotEffective { radical })
    }
}

fn pair_label(pair: &KleinPair) -> String {
    format!(
        "{}, {}",
        pair.algebra().name(),
        pair.stabilizer().display(pair.algebra().labels())
    )
}

/// Compares `Fₖ₊₁` with `{x ∈ 𝔤 : [x, 𝔤] ⊆ Fₖ}` at every index up to
/// stabilization. Disagreements are findings, not failures.
pub fn check_second_form(pair: &KleinPair) -> Report {
    let alg = pair.algebra();
    let labels = alg.labels();
    let f = weisfeiler_filtration(pair);
    let whole = alg.whole();
    let mut report = Report::new();
    for k in 0..=f.stabilization_index() {
        let second = alg.transporter_unchecked(&whole, &whole, f.term(k));
        let next = f.term(k + 1);
        let status = if &second == next { Status::Pass } else { Status::Finding };
        report.push(CheckRecord::new(
            "second-form",
            format!("{}; k={k}", pair_label(pair)),
            format!("{{x : [x,g] in F{k}}} = {}", second.display(labels)),
            format!("F{} = {}", k + 1, next.display(labels)),
            status,
        ));
    }
    report
}

/// `[Fᵢ, Fⱼ] ⊆ Fᵢ₊ⱼ` for `0 ≤ i, j ≤ r`, plus nilpotency of `F₁` when the
/// pair is effective.
pub fn check_bracket_grading(pair: &KleinPair) -> Report {
    let f = weisfeiler_filtration(pair);
    let mut report = bracket_grading_records(pair, &f);
    let alg = pair.algebra();
    let label = pair_label(pair);
    if effectivity_radical(pair).is_zero() {
        let lcs = lower_central_series_of(alg, f.term(1));
        report.push(CheckRecord::new(
            "first-term-nilpotent",
            label,
            format!("lower central series of F1 ends at {}", lcs.terminal().display(alg.labels())),
            "0",
            Status::from_bool(lcs.reaches_zero()),
        ));
    } else {
        report.push(CheckRecord::new(
            "first-term-nilpotent",
            label,
            "pair is not effective",
            "",
            Status::NotApplicable,
        ));
    }
    report
}

pub(crate) fn bracket_grading_records(pair: &KleinPair, f: &Filtration) -> Report {
    let alg = pair.algebra();
    let r = f.stabilization_index();
    let label = pair_label(pair);
    let mut report = Report::new();
    for i in 0..=r {
        for j in i..=r {
            let br = alg.bracket_span_unchecked(f.term(i), f.term(j));
            let target = f.term(i + j);
            report.push(CheckRecord::new(
                "bracket-grading",
                format!("{label}; i={i}, j={j}"),
                format!("[F{i},F{j}] = {}", br.display(alg.labels())),
                format!("inside F{} = {}", i + j, target.display(alg.labels())),
                Status::from_bool(br.is_subspace_of(target)),
            ));
        }
    }
    report
}

/// For an effective pair of order `r ≥ 1`, the stabilizer meets the
/// `(r-1)`-th lower central term nontrivially.
pub fn check_central_series_meet(pair: &KleinPair) -> Result<Report> {
    require_effective(pair)?;
    let f = weisfeiler_filtration(pair);
    let r = f.zero_index().expect("effective");
    if r == 0 {
        return Err(Error::NotApplicable("order 0: the stabilizer is trivial".into()));
    }
    let alg = pair.algebra();
    let lcs = lower_central_series(alg);
    let meet = pair.stabilizer().intersect(lcs.term(r - 1))?;
    let mut report = Report::new();
    report.push(CheckRecord::new(
        "stabilizer-meets-lower-central",
        format!("{}; r={r}", pair_label(pair)),
        format!("dim(g0 ∩ g_({})) = {}", r - 1, meet.dim()),
        ">= 1",
        Status::from_bool(meet.dim() >= 1),
    ));
    Ok(report)
}

/// `order ≤ n(𝔤) + 1` for nilpotent 𝔤.
pub fn check_nilpotent_order_bound(pair: &KleinPair) -> Result<Report> {
    let alg = pair.algebra();
    let lcs = lower_central_series(alg);
    if !lcs.reaches_zero() {
        return Err(Error::NotApplicable(format!("{} is not nilpotent", alg.name())));
    }
    require_effective(pair)?;
    let r = weisfeiler_filtration(pair).zero_index().expect("effective");
    let n = lcs.length();
    let mut report = Report::new();
    report.push(CheckRecord::new(
        "nilpotent-order-bound",
        pair_label(pair),
        format!("order {r}, nil-length {n}"),
        format!("order <= {}", n + 1),
        Status::from_bool(r <= n + 1),
    ));
    Ok(report)
}

/// Compares the order with the semisimplicity and compact-type flags of 𝔤
/// and 𝔤₀.
///
/// A semisimple (or compact-type) stabilizer must give order 1, because
/// `F₁` is a nilpotent ideal of `𝔤₀`; a violation there is a failure. The
/// corresponding statements about 𝔤 itself are only reported: when they
/// do not hold the record is a finding.
pub fn check_semisimple_order(pair: &KleinPair) -> Result<Report> {
    if pair.stabilizer().is_zero() {
        return Err(Error::NotApplicable("stabilizer is zero".into()));
    }
    require_effective(pair)?;
    let alg = pair.algebra();
    let r = weisfeiler_filtration(pair).zero_index().expect("effective");
    let g = classify(alg);
    let g0 = classify(&alg.restrict(pair.stabilizer())?);
    let label = pair_label(pair);
    let mut report = Report::new();
    report.push(CheckRecord::info(
        "semisimplicity",
        label.clone(),
        format!(
            "g semisimple={}, g compact-type={}, g0 semisimple={}, g0 compact-type={}, order={r}",
            g.is_semisimple(),
            g.is_compact_type(),
            g0.is_semisimple(),
            g0.is_compact_type()
        ),
    ));
    let mut row = |check: &str, applies: bool, asserted: bool| {
        let status = match (applies, r == 1, asserted) {
            (false, _, _) => Status::NotApplicable,
            (true, true, _) => Status::Pass,
            (true, false, true) => Status::Fail,
            (true, false, false) => Status::Finding,
        };
        report.push(CheckRecord::new(check, label.clone(), format!("order {r}"), "order 1", status));
    };
    row("semisimple-stabilizer-order", g0.is_semisimple(), true);
    row("compact-stabilizer-order", g0.is_compact_type(), true);
    row("semisimple-algebra-order", g.is_semisimple(), false);
    row("compact-algebra-order", g.is_compact_type(), false);
    Ok(report)
}

/// The sequence `a, ad(x₁)a, ad(x₂,x₁)a, …, ad(xᵣ,…,x₁)a` for an effective
/// pair of order `r ≥ 1`.
///
/// `values[i]` is `ad(xᵢ,…,x₁)a` and lies in `F_{r-i-1} \ F_{r-i}`; the
/// last value leaves the stabilizer and `values[r-1]` is the nonzero
/// element of `𝔤₀ ∩ 𝔤₍ᵣ₋₁₎`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub order: usize,
    pub steps: Vec<Vector>,
    pub values: Vec<Vector>,
}

impl WitnessChain {
    pub fn seed(&self) -> &Vector {
        &self.values[0]
    }
}

pub fn witness_chain(pair: &KleinPair) -> Result<WitnessChain> {
    require_effective(pair)?;
    let f = weisfeiler_filtration(pair);
    let r = f.zero_index().expect("effective");
    if r == 0 {
        return Err(Error::NotApplicable("order 0: no witness sequence".into()));
    }
    let alg = pair.algebra();
    let mut values = vec![f.term(r - 1).basis()[0].clone()];
    let mut steps = Vec::with_capacity(r);
    for i in 1..=r {
        let target = f.level(r as isize - i as isize);
        let current = values.last().unwrap();
        // The current value lies outside F_{r-i+1}, so ad(current) moves some
        // element of 𝔤 out of F_{r-i}; by linearity some basis vector does.
        let found = (0..alg.dim()).find_map(|j| {
            let x = alg.basis_vector(j);
            let y = alg.bracket_unchecked(&x, current);
            (!target.contains_unchecked(&y)).then_some((x, y))
        });
        let (x, y) = found.ok_or_else(|| {
            Error::InvalidPair(format!("no basis vector moves step {i} out of F{}", r - i))
        })?;
        steps.push(x);
        values.push(y);
    }
    Ok(WitnessChain { order: r, steps, values })
}

/// Builds the witness chain and re-checks its defining properties with
/// fresh brackets and membership tests.
pub fn check_witness_chain(pair: &KleinPair) -> Result<Report> {
    let chain = witness_chain(pair)?;
    let alg = pair.algebra();
    let labels = alg.labels();
    let f = weisfeiler_filtration(pair);
    let r = chain.order;
    let label = pair_label(pair);
    let show = |v: &Vector| format_combination(v, labels);
    let mut report = Report::new();

    report.push(CheckRecord::info(
        "witness-sequence",
        label.clone(),
        format!(
            "a = {}; x = ({})",
            show(chain.seed()),
            chain.steps.iter().map(show).collect::<Vec<_>>().join(", ")
        ),
    ));

    let a = chain.seed();
    let seed_ok = f.term(r - 1).contains_unchecked(a) && !is_zero_vector(a);
    report.push(CheckRecord::new(
        "witness-level",
        format!("{label}; i=0"),
        show(a),
        format!("in F{} \\ F{r}", r - 1),
        Status::from_bool(seed_ok),
    ));

    let mut value = a.clone();
    for (i, x) in chain.steps.iter().enumerate() {
        let i = i + 1;
        report.push(CheckRecord::new(
            "witness-outside-stabilizer",
            format!("{label}; x{i}"),
            show(x),
            "not in g0",
            Status::from_bool(!pair.stabilizer().contains_unchecked(x)),
        ));
        value = alg.bracket(x, &value)?;
        let upper = f.level(r as isize - i as isize - 1);
        let lower = f.level(r as isize - i as isize);
        let ok = upper.contains_unchecked(&value) && !lower.contains_unchecked(&value) && value == chain.values[i];
        let upper_name = if r == i { "g".to_string() } else { format!("F{}", r - i - 1) };
        report.push(CheckRecord::new(
            "witness-level",
            format!("{label}; i={i}"),
            show(&value),
            format!("in {upper_name} \\ F{}", r - i),
            Status::from_bool(ok),
        ));
    }

    let terminal = &chain.values[r - 1];
    let lcs = lower_central_series(alg);
    let ok = !is_zero_vector(terminal)
        && pair.stabilizer().contains_unchecked(terminal)
        && lcs.term(r - 1).contains_unchecked(terminal);
    report.push(CheckRecord::new(
        "witness-terminal-membership",
        label,
        show(terminal),
        format!("nonzero, in g0 ∩ g_({})", r - 1),
        Status::from_bool(ok),
    ));
    Ok(report)
}
