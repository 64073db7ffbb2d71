//! Sweeps `(kind, n)` and checks every analytic result against direct
//! computation, producing a structured report of claims.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{square_closed_form, trace_closed_form};
use crate::dtt::{apply, build_matrix, matrix_multiply, SquareMatrix, TransformKind};
use crate::eigensolver::{cluster_eigenvalues, default_cluster_tolerances, jacobi_eigen};
use crate::error::{DttError, Result};
use crate::spectrum::{analytic_spectrum, raw_table, SpectrumSpec};
use crate::subspaces::{
    cases_for, expected_coeffs, fit_action, q_pair, reduced_eigen, v1_basis, v1_scalar, QPair,
};
use crate::trig_sums::{check_lattice, IdentityId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    SquareForm,
    TraceForm,
    Spectrum,
    Multiplicities,
    V1Action,
    QInvariance,
    EigvecResidual,
    IdentitySum,
}

impl ClaimId {
    pub fn name(self) -> &'static str {
        match self {
            ClaimId::SquareForm => "SquareForm",
            ClaimId::TraceForm => "TraceForm",
            ClaimId::Spectrum => "Spectrum",
            ClaimId::Multiplicities => "Multiplicities",
            ClaimId::V1Action => "V1Action",
            ClaimId::QInvariance => "QInvariance",
            ClaimId::EigvecResidual => "EigvecResidual",
            ClaimId::IdentitySum => "IdentitySum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: ClaimId,
    /// `None` for identity-sum claims.
    pub kind: Option<TransformKind>,
    /// Transform order, or the structural parameter of an identity.
    pub n: usize,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl Claim {
    fn new(
        id: ClaimId,
        kind: Option<TransformKind>,
        n: usize,
        measured: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        Claim {
            id,
            kind,
            n,
            measured,
            tolerance,
            // NaN never passes
            passed: measured <= tolerance,
            detail: detail.into(),
        }
    }
}

/// Relative tolerances; each is multiplied by the scale noted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// `x n`
    pub square: f64,
    /// `x n`
    pub trace: f64,
    /// `x max(1, |lambda|)`
    pub eigenvalue: f64,
    /// `x n`
    pub subspace_residual: f64,
    /// absolute
    pub coefficients: f64,
    /// `x n`
    pub orthogonality: f64,
    /// `x n * ||v||_inf`
    pub eigenvector: f64,
    /// `x term count`
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            square: 1e-9,
            trace: 1e-10,
            eigenvalue: 1e-9,
            subspace_residual: 1e-9,
            coefficients: 1e-9,
            orthogonality: 1e-12,
            eigenvector: 1e-9,
            identity: 1e-10,
        }
    }
}

/// Checks for one admissible `(kind, n)`.
pub fn verify_kind(kind: TransformKind, n: usize, tol: &Tolerances) -> Result<Vec<Claim>> {
    verify_cell(kind, n, tol).map(|(claims, _)| claims)
}

fn verify_cell(
    kind: TransformKind,
    n: usize,
    tol: &Tolerances,
) -> Result<(Vec<Claim>, Vec<String>)> {
    kind.check_size(n)?;
    let nf = n as f64;
    let mut claims = Vec::new();
    let mut notes = Vec::new();
    let a = build_matrix(kind, n)?.into_matrix();
    let a2 = matrix_multiply(&a, &a)?;

    let form = square_closed_form(kind, n)?;
    claims.push(Claim::new(
        ClaimId::SquareForm,
        Some(kind),
        n,
        form.materialize().max_abs_diff(&a2),
        tol.square * nf,
        "max |closed form - A*A|",
    ));

    let trace = trace_closed_form(kind, n)?.value;
    claims.push(Claim::new(
        ClaimId::TraceForm,
        Some(kind),
        n,
        (trace - a.trace()).abs(),
        tol.trace * nf,
        "|trace formula - sum diag(A)|",
    ));

    let analytic = analytic_spectrum(kind, n)?;
    let raw = raw_table(kind, n)?;
    if raw.len() != analytic.pairs.len() {
        notes.push(format!(
            "{kind} n={n}: analytic table merged from {} entries to {}",
            raw.len(),
            analytic.pairs.len()
        ));
    }
    claims.extend(spectrum_claims(kind, n, &a, &analytic, tol));

    if matches!(
        kind,
        TransformKind::Dct1 | TransformKind::Dct5 | TransformKind::Dst8
    ) {
        subspace_claims(kind, n, &a, &a2, tol, &mut claims, &mut notes)?;
    }
    Ok((claims, notes))
}

fn spectrum_claims(
    kind: TransformKind,
    n: usize,
    a: &SquareMatrix,
    analytic: &SpectrumSpec,
    tol: &Tolerances,
) -> Vec<Claim> {
    let (values, note) = match jacobi_eigen(a, false) {
        Ok(r) => (r.eigenvalues, String::new()),
        Err(DttError::NoConvergence(partial)) => (
            partial.eigenvalues,
            format!(
                " (Jacobi did not converge in {} sweeps)",
                partial.sweeps_used
            ),
        ),
        Err(e) => (vec![f64::NAN; n], format!(" ({e})")),
    };
    let (ta, tr) = default_cluster_tolerances(n);
    let clusters = cluster_eigenvalues(&values, ta, tr).clusters;

    // every computed eigenvalue is near some analytic value and vice versa
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1.0);
    let nearest = |x: f64| {
        analytic
            .pairs
            .iter()
            .map(|p| rel(x, p.value))
            .fold(f64::INFINITY, f64::min)
    };
    let mut worst = values.iter().fold(0.0f64, |w, &x| w.max(nearest(x)));
    for p in &analytic.pairs {
        let d = values
            .iter()
            .map(|&x| rel(x, p.value))
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    if values.iter().any(|x| x.is_nan()) {
        worst = f64::NAN;
    }

    let mut mismatches = 0usize;
    for i in 0..clusters.len().max(analytic.pairs.len()) {
        match (clusters.get(i), analytic.pairs.get(i)) {
            (Some(c), Some(p))
                if c.multiplicity == p.multiplicity && rel(c.value, p.value) <= tol.eigenvalue => {}
            _ => mismatches += 1,
        }
    }

    vec![
        Claim::new(
            ClaimId::Spectrum,
            Some(kind),
            n,
            worst,
            tol.eigenvalue,
            format!("max relative distance between Jacobi and analytic eigenvalues{note}"),
        ),
        Claim::new(
            ClaimId::Multiplicities,
            Some(kind),
            n,
            mismatches as f64,
            0.0,
            format!(
                "{} clusters vs {} analytic values; count of mismatched entries",
                clusters.len(),
                analytic.pairs.len()
            ),
        ),
    ]
}

fn subspace_claims(
    kind: TransformKind,
    n: usize,
    a: &SquareMatrix,
    a2: &SquareMatrix,
    tol: &Tolerances,
    claims: &mut Vec<Claim>,
    notes: &mut Vec<String>,
) -> Result<()> {
    let nf = n as f64;
    let pairs: Vec<QPair> = cases_for(kind, n)
        .into_iter()
        .map(|case| q_pair(case, n))
        .collect::<Result<_>>()?;

    match v1_basis(kind, n) {
        Ok(basis) => {
            let c = v1_scalar(kind, n)?;
            let mut action: f64 = 0.0;
            let mut ortho: f64 = 0.0;
            for v in &basis.vectors {
                action = action.max(apply(a2, v)?.max_abs_diff(&v.scaled(c)));
                for p in &pairs {
                    ortho = ortho.max(v.dot(&p.q1).abs()).max(v.dot(&p.q2).abs());
                }
            }
            claims.push(Claim::new(
                ClaimId::V1Action,
                Some(kind),
                n,
                action,
                tol.subspace_residual * nf,
                format!(
                    "max |A^2 v - {c} v| over {} basis vectors",
                    basis.vectors.len()
                ),
            ));
            claims.push(Claim::new(
                ClaimId::V1Action,
                Some(kind),
                n,
                ortho,
                tol.orthogonality * nf,
                "max |<v, q>| between V1 and q generators",
            ));
        }
        Err(DttError::SizeTooSmall { min, .. }) => {
            notes.push(format!(
                "{kind} n={n}: V1 checks skipped (requires n >= {min})"
            ));
        }
        Err(e) => return Err(e),
    }

    if pairs.is_empty() {
        notes.push(format!(
            "{kind} n={n}: q-pair checks skipped (order too small)"
        ));
    }
    for pair in &pairs {
        let case = pair.case;
        let fit = fit_action(a, pair)?;
        let expected = expected_coeffs(case, n)?;
        claims.push(Claim::new(
            ClaimId::QInvariance,
            Some(kind),
            n,
            fit.residual,
            tol.subspace_residual * nf,
            format!("{}: residual of A q projected on span(q1, q2)", case.name()),
        ));
        claims.push(Claim::new(
            ClaimId::QInvariance,
            Some(kind),
            n,
            fit.coeffs.max_abs_diff(&expected),
            tol.coefficients,
            format!("{}: fitted vs derived action coefficients", case.name()),
        ));

        let mut residual: f64 = 0.0;
        for eig in reduced_eigen(expected)? {
            let v = pair.q1.scaled(eig.coords[0]).axpy(eig.coords[1], &pair.q2);
            let r = apply(a, &v)?.max_abs_diff(&v.scaled(eig.value));
            residual = residual.max(r / v.norm_inf());
        }
        claims.push(Claim::new(
            ClaimId::EigvecResidual,
            Some(kind),
            n,
            residual,
            tol.eigenvector * nf,
            format!(
                "{}: max |A v - lambda v| / |v| for v = q1 + x q2",
                case.name()
            ),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Tally {
    fn add(&mut self, passed: bool) {
        self.total += 1;
        if passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: Tally,
    pub by_id: BTreeMap<String, Tally>,
    /// Identity-sum claims are tallied under `"identities"`.
    pub by_kind: BTreeMap<String, Tally>,
}

impl Summary {
    pub fn of(claims: &[Claim]) -> Self {
        let mut s = Summary::default();
        for c in claims {
            s.total.add(c.passed);
            s.by_id
                .entry(c.id.name().to_string())
                .or_default()
                .add(c.passed);
            let kind = c.kind.map_or("identities", |k| k.name());
            s.by_kind.entry(kind.to_string()).or_default().add(c.passed);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub kinds: Vec<TransformKind>,
    pub n_min: usize,
    pub n_max: usize,
    pub fail_fast: bool,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub claims: Vec<Claim>,
    pub summary: Summary,
    /// Skipped cells and merged spectra, in sweep order.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.summary.total.failed == 0
    }
}

/// Identity-sum claims for every structural parameter in `[lo, hi]`;
/// the linear identities start at 2, the Gauss sums at 1.
pub fn identity_claims(lo: usize, hi: usize, tol: &Tolerances) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for id in IdentityId::ALL {
        let start = lo.max(if id.is_gauss() { 1 } else { 2 });
        for n in start..=hi {
            let check = check_lattice(id, n as u64)?;
            let tolerance = tol.identity * check.terms as f64;
            claims.push(Claim::new(
                ClaimId::IdentitySum,
                None,
                n,
                check.max_abs_dev,
                tolerance,
                format!(
                    "{id}: max |closed form - direct sum| over {} points",
                    check.points
                ),
            ));
        }
    }
    Ok(claims)
}

/// Verifies every admissible `(kind, n)` with `n` in `[n_min, n_max]`,
/// kinds in canonical order, followed by identity sums over the same
/// range (only when at least one kind is requested).
///
/// With `fail_fast`, the report stops right after the first failed claim.
pub fn sweep(
    kinds: &[TransformKind],
    n_min: usize,
    n_max: usize,
    tol: &Tolerances,
    fail_fast: bool,
) -> Result<VerificationReport> {
    if n_min > n_max {
        return Err(DttError::EmptyRange { n_min, n_max });
    }
    let kinds: Vec<TransformKind> = TransformKind::ALL
        .into_iter()
        .filter(|k| kinds.contains(k))
        .collect();
    let mut claims = Vec::new();
    let mut notes = Vec::new();
    let stop = |claims: &[Claim]| fail_fast && claims.iter().any(|c| !c.passed);

    'grid: for &kind in &kinds {
        for n in n_min..=n_max {
            if !kind.is_admissible(n) {
                notes.push(format!(
                    "{kind} n={n}: skipped (requires n >= {})",
                    kind.min_size()
                ));
                continue;
            }
            let (cell, cell_notes) = verify_cell(kind, n, tol)?;
            claims.extend(cell);
            notes.extend(cell_notes);
            if stop(&claims) {
                break 'grid;
            }
        }
    }
    if !kinds.is_empty() && !stop(&claims) {
        claims.extend(identity_claims(n_min, n_max, tol)?);
    }
    if fail_fast {
        if let Some(i) = claims.iter().position(|c| !c.passed) {
            claims.truncate(i + 1);
        }
    }

    Ok(VerificationReport {
        config: SweepConfig {
            kinds,
            n_min,
            n_max,
            fail_fast,
            tolerances: *tol,
        },
        summary: Summary::of(&claims),
        claims,
        notes,
    })
}
