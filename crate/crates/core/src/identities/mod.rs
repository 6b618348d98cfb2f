//! Registry of identities between weighted sums, and a suite runner.

mod checks;
mod psi;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{MzvError, Result};
use crate::eval::Evaluator;
use crate::index::{all_admissible_up_to, MultiIndex};
use crate::scalar::RealField;

pub use psi::{psi_finite_difference, psi_stencil};

macro_rules! identity_ids {
    ($($id:ident),* $(,)?) => {
        /// Identity identifiers, serialized in upper snake case.
        #[allow(non_camel_case_types)]
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum IdentityId {
            $($id),*
        }

        impl IdentityId {
            const ALL: &'static [IdentityId] = &[$(IdentityId::$id),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$id => stringify!($id)),*
                }
            }
        }
    };
}

identity_ids!(
    SUM_FORMULA,
    EULER_SUM,
    WEIGHTED_EULER,
    GKZ_PARAM,
    HARMONIC_DOUBLE,
    DUALITY,
    LEMMA_2_1,
    PROP_2_1,
    AK_COROLLARY,
    THM_1_SERIES,
    THM_2,
    FUNC_EQ_3_2,
    PROP_3_1_SERIES,
    PROP_4_1_I,
    PROP_4_1_II,
    PROP_4_1_III,
    LEMMA_4_1_I,
    LEMMA_4_1_II,
    PROP_4_2_I,
    PROP_4_2_II,
    GUO_XIE_D4,
);

impl IdentityId {
    pub fn all() -> &'static [IdentityId] {
        Self::ALL
    }

    fn ordinal(self) -> u64 {
        Self::ALL.iter().position(|&i| i == self).unwrap_or(0) as u64
    }

    /// Smallest weight for which the suite has instances of this identity.
    pub fn min_weight(self) -> u32 {
        use IdentityId::*;
        match self {
            SUM_FORMULA | DUALITY | LEMMA_2_1 | PROP_2_1 | THM_1_SERIES | FUNC_EQ_3_2 | PROP_3_1_SERIES => 2,
            EULER_SUM | WEIGHTED_EULER | GKZ_PARAM | THM_2 | PROP_4_1_I => 3,
            HARMONIC_DOUBLE | AK_COROLLARY | PROP_4_1_II => 4,
            PROP_4_1_III | LEMMA_4_1_I | LEMMA_4_1_II | PROP_4_2_I | PROP_4_2_II | GUO_XIE_D4 => 5,
        }
    }

    /// Whether the check goes through a finite-difference stencil.
    pub fn is_finite_difference(self) -> bool {
        matches!(self, IdentityId::LEMMA_4_1_I | IdentityId::LEMMA_4_1_II)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        let want = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == want)
            .ok_or_else(|| MzvError::Parse(format!("unknown identity id `{s}`")))
    }
}

fn ser_rational<S: Serializer>(v: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_index<S: Serializer>(v: &Option<MultiIndex>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(idx) => s.serialize_str(&idx.to_string()),
        None => s.serialize_none(),
    }
}

/// Parameters of one identity instance. Unused fields stay `None`.
///
/// For `LEMMA_4_1_*`, `m` selects the equation within the lemma.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_index")]
    pub index: Option<MultiIndex>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_rational")]
    pub x: Option<Rational64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_rational")]
    pub y: Option<Rational64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_rational")]
    pub z: Option<Rational64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn l(mut self, l: u32) -> Self {
        self.l = Some(l);
        self
    }

    pub fn n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn r(mut self, r: u32) -> Self {
        self.r = Some(r);
        self
    }

    pub fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn index(mut self, idx: MultiIndex) -> Self {
        self.index = Some(idx);
        self
    }

    pub fn xy(mut self, x: Rational64, y: Rational64) -> Self {
        self.x = Some(x);
        self.y = Some(y);
        self
    }

    pub fn z(mut self, z: Rational64) -> Self {
        self.z = Some(z);
        self
    }

    pub fn cap(mut self, cap: u32) -> Self {
        self.cap = Some(cap);
        self
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let ints = [("l", self.l), ("n", self.n), ("r", self.r), ("m", self.m)];
        for (k, v) in ints {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        }
        if let Some(idx) = &self.index {
            parts.push(format!("index=({idx})"));
        }
        for (k, v) in [("x", self.x), ("y", self.y), ("z", self.z)] {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        }
        if let Some(c) = self.cap {
            parts.push(format!("cap={c}"));
        }
        f.write_str(&parts.join(" "))
    }
}

fn missing(id: IdentityId, field: &str) -> MzvError {
    MzvError::OutOfRange(format!("{id} needs parameter `{field}`"))
}

/// Outcome of checking one identity instance.
#[derive(Clone, Debug)]
pub struct IdentityReport<T> {
    pub id: IdentityId,
    pub params: Params,
    pub residual: T,
    pub tolerance: T,
    pub pass: bool,
    pub elapsed: Duration,
}

/// Step used by the finite-difference checks.
pub fn psi_step<T: RealField>(ev: &Evaluator<T>) -> T {
    T::ten_pow_neg(6, ev.context())
}

/// Tolerance for the finite-difference checks.
pub fn psi_tolerance<T: RealField>(ev: &Evaluator<T>) -> T {
    T::ten_pow_neg(10, ev.context())
}

/// Evaluates both sides of one identity instance and compares them.
pub fn check_identity<T: RealField>(ev: &Evaluator<T>, id: IdentityId, params: &Params) -> Result<IdentityReport<T>> {
    use IdentityId::*;
    let start = Instant::now();
    let p = params;
    let l = || p.l.ok_or_else(|| missing(id, "l"));
    let n = || p.n.ok_or_else(|| missing(id, "n"));
    let m = || p.m.ok_or_else(|| missing(id, "m"));
    let cap = || p.cap.map(|c| c as usize).ok_or_else(|| missing(id, "cap"));
    let xy = || -> Result<(T, T)> {
        let x = p.x.ok_or_else(|| missing(id, "x"))?;
        let y = p.y.ok_or_else(|| missing(id, "y"))?;
        Ok((ev.rational(&x), ev.rational(&y)))
    };
    let (lhs, rhs) = match id {
        SUM_FORMULA => checks::sum_formula(ev, l()?, n()?)?,
        EULER_SUM => checks::euler_sum(ev, l()?, false)?,
        WEIGHTED_EULER => checks::euler_sum(ev, l()?, true)?,
        GKZ_PARAM => {
            let x = p.x.ok_or_else(|| missing(id, "x"))?;
            let y = p.y.ok_or_else(|| missing(id, "y"))?;
            checks::gkz_param(ev, l()?, &x, &y)?
        }
        HARMONIC_DOUBLE => checks::harmonic_double(ev, m()?, n()?)?,
        DUALITY => checks::duality(ev, p.index.as_ref().ok_or_else(|| missing(id, "index"))?)?,
        LEMMA_2_1 => {
            let (x, y) = xy()?;
            let z = ev.rational(&p.z.ok_or_else(|| missing(id, "z"))?);
            checks::lemma_2_1(ev, l()?, n()?, &x, &y, &z)?
        }
        PROP_2_1 => {
            let (x, y) = xy()?;
            checks::prop_2_1(ev, l()?, n()?, &x, &y)?
        }
        AK_COROLLARY => checks::ak_corollary(ev, l()?, n()?, p.r.ok_or_else(|| missing(id, "r"))?)?,
        THM_1_SERIES => {
            let (x, y) = xy()?;
            checks::thm1_series(ev, &x, &y, cap()?)?
        }
        THM_2 => {
            let (x, y) = xy()?;
            checks::thm_2(ev, l()?, &x, &y)?
        }
        FUNC_EQ_3_2 => {
            let (x, y) = xy()?;
            checks::func_eq_3_2(ev, &x, &y, cap()?)?
        }
        PROP_3_1_SERIES => checks::prop_3_1(ev, cap()?)?,
        PROP_4_1_I | PROP_4_1_II | PROP_4_1_III => {
            let part = match id {
                PROP_4_1_I => 1,
                PROP_4_1_II => 2,
                _ => 3,
            };
            let (x, y) = xy()?;
            checks::prop_4_1(ev, part, l()?, &x, &y)?
        }
        LEMMA_4_1_I => checks::lemma_4_1_i(ev, l()?, m()?, p.n, &psi_step(ev))?,
        LEMMA_4_1_II => checks::lemma_4_1_ii(ev, l()?, m()?, &psi_step(ev))?,
        PROP_4_2_I => checks::prop_4_2(ev, 1, l()?)?,
        PROP_4_2_II => checks::prop_4_2(ev, 2, l()?)?,
        GUO_XIE_D4 => checks::guo_xie_d4(ev, l()?)?,
    };
    let residual = (lhs - &rhs).abs();
    let tolerance = if id.is_finite_difference() {
        psi_tolerance(ev)
    } else {
        ev.tolerance()
    };
    let pass = residual <= tolerance;
    Ok(IdentityReport {
        id,
        params: params.clone(),
        residual,
        tolerance,
        pass,
        elapsed: start.elapsed(),
    })
}

/// Per-identity sampler of dyadic parameters `k/64`.
struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(seed: u64, id: IdentityId) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&id.ordinal().to_le_bytes());
        Sampler {
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    fn dyadic(&mut self, bound: i64) -> Rational64 {
        Rational64::new(self.rng.gen_range(-bound..=bound), 64)
    }

    fn xy(&mut self) -> (Rational64, Rational64) {
        (self.dyadic(128), self.dyadic(128))
    }

    fn xy_nonzero(&mut self) -> (Rational64, Rational64) {
        loop {
            let (x, y) = self.xy();
            if x != Rational64::from(0) && y != Rational64::from(0) {
                return (x, y);
            }
        }
    }

    /// `|z| ≤ 44/64 < 0.7`.
    fn z(&mut self) -> Rational64 {
        self.dyadic(44)
    }
}

/// Instances of `id` at weights up to `cap` with `samples` random
/// parameter draws where the identity has free parameters.
pub fn instances(id: IdentityId, cap: u32, samples: usize, seed: u64) -> Vec<Params> {
    use IdentityId::*;
    let mut rng = Sampler::new(seed, id);
    let mut out = Vec::new();
    let lo = id.min_weight();
    match id {
        SUM_FORMULA => {
            for l in 2..=cap {
                for n in 1..l {
                    out.push(Params::new().l(l).n(n));
                }
            }
        }
        EULER_SUM | WEIGHTED_EULER | PROP_4_2_I | PROP_4_2_II | GUO_XIE_D4 => {
            out.extend((lo..=cap).map(|l| Params::new().l(l)));
        }
        GKZ_PARAM | PROP_4_1_I | PROP_4_1_II | PROP_4_1_III => {
            for l in lo..=cap {
                for _ in 0..samples {
                    let (x, y) = rng.xy();
                    out.push(Params::new().l(l).xy(x, y));
                }
            }
        }
        THM_2 => {
            for l in lo..=cap {
                for _ in 0..samples {
                    let (x, y) = rng.xy_nonzero();
                    out.push(Params::new().l(l).xy(x, y));
                }
            }
        }
        HARMONIC_DOUBLE => {
            for m in 2..=cap {
                for n in 2..=cap.saturating_sub(m) {
                    out.push(Params::new().m(m).n(n));
                }
            }
        }
        DUALITY => {
            out.extend(all_admissible_up_to(cap).into_iter().map(|idx| Params::new().index(idx)));
        }
        LEMMA_2_1 => {
            for l in 1..=cap {
                for n in 1..=l {
                    for _ in 0..samples {
                        let (x, y) = rng.xy();
                        let z = rng.z();
                        out.push(Params::new().l(l).n(n).xy(x, y).z(z));
                    }
                }
            }
        }
        PROP_2_1 => {
            for l in 2..=cap {
                for n in 1..l {
                    for _ in 0..samples {
                        let (x, y) = rng.xy();
                        out.push(Params::new().l(l).n(n).xy(x, y));
                    }
                }
            }
        }
        AK_COROLLARY => {
            for l in 2..=cap {
                for n in 1..l {
                    for r in 1..(l - n) {
                        out.push(Params::new().l(l).n(n).r(r));
                    }
                }
            }
        }
        THM_1_SERIES | FUNC_EQ_3_2 => {
            for _ in 0..samples {
                let (x, y) = rng.xy();
                out.push(Params::new().xy(x, y).cap(cap));
            }
        }
        PROP_3_1_SERIES => out.push(Params::new().cap(cap)),
        LEMMA_4_1_I => {
            for l in lo..=cap {
                for n in 3..l {
                    out.push(Params::new().l(l).m(1).n(n));
                }
                for m in 2..=4 {
                    out.push(Params::new().l(l).m(m));
                }
            }
        }
        LEMMA_4_1_II => {
            for l in lo..=cap {
                for m in 1..=2 {
                    out.push(Params::new().l(l).m(m));
                }
            }
        }
    }
    out
}

/// Checks every instance of `ids` up to weight `cap`. Reports come back in
/// enumeration order regardless of scheduling.
pub fn run_suite<T: RealField>(
    ev: &Evaluator<T>,
    ids: &[IdentityId],
    cap: u32,
    samples: usize,
    seed: u64,
) -> Result<Vec<IdentityReport<T>>> {
    if let Some(id) = ids.iter().find(|id| id.min_weight() > cap && id.min_weight() >= 5) {
        return Err(MzvError::OutOfRange(format!("{id} needs weight cap >= 5, got {cap}")));
    }
    let work: Vec<(IdentityId, Params)> = ids
        .iter()
        .flat_map(|&id| instances(id, cap, samples, seed).into_iter().map(move |p| (id, p)))
        .collect();
    log::info!("checking {} identity instances up to weight {cap}", work.len());
    work.par_iter().map(|(id, p)| check_identity(ev, *id, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{Precision, Real};
    use crate::scalar::Scalar;

    fn ev() -> Evaluator<Real> {
        Evaluator::new(Precision::default())
    }

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn id_names_round_trip() {
        assert_eq!(IdentityId::all().len(), 21);
        for &id in IdentityId::all() {
            assert_eq!(id.to_string().parse::<IdentityId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert_eq!("prop-4-1-iii".parse::<IdentityId>().unwrap(), IdentityId::PROP_4_1_III);
        assert!("PROP_9".parse::<IdentityId>().is_err());
    }

    #[test]
    fn params_serialize_compactly() {
        let p = Params::new().l(5).n(2).xy(q(1, 2), q(-3, 1));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"l":5,"n":2,"x":"1/2","y":"-3"}"#);
        assert_eq!(p.to_string(), "l=5 n=2 x=1/2 y=-3");
        let p = Params::new().index("2,1".parse().unwrap());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"index":"2,1"}"#);
    }

    #[test]
    fn every_identity_passes_on_a_small_instance() {
        let ev = ev();
        let x = q(3, 4);
        let y = q(-5, 8);
        use IdentityId::*;
        let cases = [
            (SUM_FORMULA, Params::new().l(6).n(3)),
            (EULER_SUM, Params::new().l(6)),
            (WEIGHTED_EULER, Params::new().l(6)),
            (GKZ_PARAM, Params::new().l(6).xy(x, y)),
            (GKZ_PARAM, Params::new().l(6).xy(x, x)),
            (HARMONIC_DOUBLE, Params::new().m(2).n(3)),
            (DUALITY, Params::new().index("3,1,2".parse().unwrap())),
            (LEMMA_2_1, Params::new().l(5).n(3).xy(x, y).z(q(-1, 2))),
            (PROP_2_1, Params::new().l(6).n(3).xy(x, y)),
            (AK_COROLLARY, Params::new().l(7).n(3).r(1)),
            (THM_1_SERIES, Params::new().xy(x, y).cap(6)),
            (THM_2, Params::new().l(6).xy(x, y)),
            (THM_2, Params::new().l(7).xy(x, x)),
            (FUNC_EQ_3_2, Params::new().xy(x, y).cap(6)),
            (PROP_3_1_SERIES, Params::new().cap(6)),
            (PROP_4_1_I, Params::new().l(6).xy(x, y)),
            (PROP_4_1_II, Params::new().l(6).xy(x, y)),
            (PROP_4_1_III, Params::new().l(7).xy(x, y)),
            (LEMMA_4_1_I, Params::new().l(7).m(1).n(4)),
            (LEMMA_4_1_I, Params::new().l(7).m(2)),
            (LEMMA_4_1_I, Params::new().l(7).m(3)),
            (LEMMA_4_1_I, Params::new().l(7).m(4)),
            (LEMMA_4_1_II, Params::new().l(7).m(1)),
            (LEMMA_4_1_II, Params::new().l(7).m(2)),
            (PROP_4_2_I, Params::new().l(7)),
            (PROP_4_2_II, Params::new().l(7)),
            (GUO_XIE_D4, Params::new().l(7)),
        ];
        for (id, p) in cases {
            let rep = check_identity(&ev, id, &p).unwrap();
            assert!(rep.pass, "{id} {p}: residual {}", rep.residual.to_f64());
        }
    }

    #[test]
    fn out_of_range_parameters_are_errors() {
        let ev = ev();
        use IdentityId::*;
        assert!(check_identity(&ev, AK_COROLLARY, &Params::new().l(7).n(3).r(0)).is_err());
        assert!(check_identity(&ev, THM_2, &Params::new().l(5).xy(q(0, 1), q(1, 1))).is_err());
        assert!(check_identity(&ev, LEMMA_2_1, &Params::new().l(3).n(1).xy(q(1, 1), q(1, 1)).z(q(3, 4))).is_err());
        assert!(check_identity(&ev, PROP_4_1_III, &Params::new().l(4).xy(q(1, 1), q(1, 1))).is_err());
        assert!(check_identity(&ev, SUM_FORMULA, &Params::new().l(4)).is_err());
    }

    #[test]
    fn instance_counts() {
        use IdentityId::*;
        assert_eq!(instances(THM_2, 10, 3, 0).len(), 24);
        assert_eq!(instances(SUM_FORMULA, 5, 1, 0).len(), 10);
        assert_eq!(instances(PROP_3_1_SERIES, 9, 4, 0).len(), 1);
        assert!(instances(THM_2, 10, 3, 7)
            .iter()
            .all(|p| p.x != Some(q(0, 1)) && p.y != Some(q(0, 1))));
        assert_eq!(instances(GKZ_PARAM, 8, 2, 1), instances(GKZ_PARAM, 8, 2, 1));
        assert_ne!(instances(GKZ_PARAM, 8, 2, 1), instances(GKZ_PARAM, 8, 2, 2));
    }

    #[test]
    fn suite_guard_and_order() {
        let ev = ev();
        assert!(run_suite(&ev, &[IdentityId::PROP_4_2_I], 4, 1, 0).is_err());
        let reps = run_suite(&ev, &[IdentityId::EULER_SUM, IdentityId::SUM_FORMULA], 5, 1, 0).unwrap();
        assert_eq!(reps.len(), 3 + 10);
        assert_eq!(reps[0].params.l, Some(3));
        assert!(reps.iter().all(|r| r.pass));
    }
}
