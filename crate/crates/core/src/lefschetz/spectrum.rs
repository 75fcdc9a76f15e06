use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{numtheory, Cyclotomic};
use crate::error::{Error, Result};

/// Eigenvalue multiplicities of a finite-order linear map: exponent `k`
/// (standing for `ζ_N^k`) mapped to its multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpectrumJson", into = "SpectrumJson")]
pub struct Spectrum {
    conductor: u64,
    mults: BTreeMap<u64, u32>,
}

impl Spectrum {
    /// Builds a spectrum; exponents are taken mod `conductor`, repeated
    /// exponents add up and zero multiplicities are dropped.
    pub fn new(conductor: u64, entries: impl IntoIterator<Item = (i64, u32)>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::invalid("spectrum conductor must be positive"));
        }
        let mut mults = BTreeMap::new();
        for (k, m) in entries {
            if m == 0 {
                continue;
            }
            *mults
                .entry(k.rem_euclid(conductor as i64) as u64)
                .or_insert(0) += m;
        }
        if mults.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        Ok(Spectrum { conductor, mults })
    }

    /// `{1 : dim}`
    pub fn trivial(dim: u32) -> Result<Self> {
        Self::new(1, [(0, dim)])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn mults(&self) -> &BTreeMap<u64, u32> {
        &self.mults
    }

    pub fn dim(&self) -> u32 {
        self.mults.values().sum()
    }

    /// Multiplicity of `ζ_N^k` (0 if absent).
    pub fn mult(&self, k: i64) -> u32 {
        let k = k.rem_euclid(self.conductor as i64) as u64;
        self.mults.get(&k).copied().unwrap_or(0)
    }

    /// Multiplicity of the root of unity `exp(2πi·j/order)`, whatever the
    /// conductor of the spectrum.
    pub fn mult_of_root(&self, order: u64, j: i64) -> u32 {
        let j = j.rem_euclid(order as i64) as u64;
        // ζ_order^j = ζ_N^k  <=>  j·N = k·order
        let (n, num) = (self.conductor, j * self.conductor);
        if num % order != 0 {
            return 0;
        }
        self.mults.get(&((num / order) % n)).copied().unwrap_or(0)
    }

    pub fn eigenvalue(&self, k: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.conductor, k as i64)
    }

    /// `(k, m)` pairs in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.mults.iter().map(|(&k, &m)| (k, m))
    }

    /// Same eigenvalues over the smallest conductor that carries them.
    pub fn normalized(&self) -> Self {
        let g = self
            .mults
            .keys()
            .fold(self.conductor, |g, &k| numtheory::gcd(g, k));
        Spectrum {
            conductor: self.conductor / g,
            mults: self.mults.iter().map(|(&k, &m)| (k / g, m)).collect(),
        }
    }

    /// Re-expresses the spectrum over a multiple of its conductor.
    pub fn with_conductor(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::invalid(format!(
                "conductor {target} is not a multiple of {}",
                self.conductor
            )));
        }
        let f = target / self.conductor;
        Ok(Spectrum {
            conductor: target,
            mults: self.mults.iter().map(|(&k, &m)| (k * f, m)).collect(),
        })
    }

    /// Image under the Galois automorphism `ζ_N ↦ ζ_N^j`.
    pub fn galois(&self, j: i64) -> Self {
        let n = self.conductor as i64;
        assert_eq!(
            numtheory::gcd(j.rem_euclid(n) as u64, self.conductor),
            1,
            "Galois exponent must be a unit"
        );
        Spectrum::new(
            self.conductor,
            self.mults.iter().map(|(&k, &m)| (k as i64 * j, m)),
        )
        .expect("nonempty")
    }

    /// Spectrum of `c·σ` for the scalar `c = ζ_N^shift`.
    pub fn twist(&self, shift: i64) -> Self {
        Spectrum::new(
            self.conductor,
            self.mults.iter().map(|(&k, &m)| (k as i64 + shift, m)),
        )
        .expect("nonempty")
    }

    /// Parses `"N: k1^m1, k2^m2, ..."`; a bare `k` means multiplicity 1.
    pub fn parse(src: &str) -> Result<Self> {
        let colon = src
            .find(':')
            .ok_or_else(|| Error::parse(0, "expected 'N: k^m, ...'"))?;
        let head = &src[..colon];
        let conductor: u64 = head
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::parse(0, format!("bad conductor {:?}", head.trim())))?;
        let mut entries = Vec::new();
        let mut offset = colon + 1;
        for item in src[colon + 1..].split(',') {
            let at = offset + (item.len() - item.trim_start().len());
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::parse(at, "empty eigenvalue entry"));
            }
            let (k, m) = match item.split_once('^') {
                Some((k, m)) => (k.trim(), m.trim()),
                None => (item, "1"),
            };
            let k: i64 = k
                .parse()
                .map_err(|_| Error::parse(at, format!("bad exponent {k:?}")))?;
            let m: u32 = m
                .parse()
                .map_err(|_| Error::parse(at, format!("bad multiplicity {m:?}")))?;
            entries.push((k, m));
        }
        Spectrum::new(conductor, entries)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.conductor)?;
        for (i, (k, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spectrum({self})")
    }
}

impl std::str::FromStr for Spectrum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Spectrum::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    conductor: u64,
    mults: BTreeMap<String, u32>,
}

impl From<Spectrum> for SpectrumJson {
    fn from(s: Spectrum) -> Self {
        SpectrumJson {
            conductor: s.conductor,
            mults: s.mults.iter().map(|(k, m)| (k.to_string(), *m)).collect(),
        }
    }
}

impl TryFrom<SpectrumJson> for Spectrum {
    type Error = Error;
    fn try_from(j: SpectrumJson) -> Result<Self> {
        let entries = j
            .mults
            .iter()
            .map(|(k, &m)| {
                k.parse::<i64>()
                    .map(|k| (k, m))
                    .map_err(|_| Error::invalid(format!("bad exponent key {k:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(j.conductor, entries)
    }
}

/// Degree `d` together with the spectrum of the lift that leaves a defining
/// polynomial invariant. The hypersurface has dimension `dim V − 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceAction {
    degree: u32,
    spectrum: Spectrum,
}

impl HypersurfaceAction {
    pub fn new(degree: u32, spectrum: Spectrum) -> Result<Self> {
        if degree < 2 {
            return Err(Error::invalid("hypersurface degree must be >= 2"));
        }
        if spectrum.dim() < 2 {
            return Err(Error::invalid("ambient space must have dimension >= 2"));
        }
        Ok(HypersurfaceAction { degree, spectrum })
    }

    /// Identity acting on a degree-`d` hypersurface of dimension `n`.
    pub fn trivial(n: u32, degree: u32) -> Result<Self> {
        Self::new(degree, Spectrum::trivial(n + 2)?)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Dimension `n` of the hypersurface.
    pub fn n(&self) -> u32 {
        self.spectrum.dim() - 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s = Spectrum::parse("6: 0^2, 3^1").unwrap();
        assert_eq!(s.conductor(), 6);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.mult(0), 2);
        assert_eq!(s.mult(9), 1);
        assert_eq!(s.to_string(), "6: 0^2, 3^1");
        assert_eq!(Spectrum::parse(&s.to_string()).unwrap(), s);
        assert_eq!(Spectrum::parse("4: 1, 5^2").unwrap().mult(1), 3);
        assert!(matches!(Spectrum::parse("6 0^2"), Err(Error::Parse { .. })));
        assert!(matches!(
            Spectrum::parse("6: 0^2, x^1"),
            Err(Error::Parse { position: 8, .. })
        ));
        assert!(matches!(
            Spectrum::parse("6: 0^0"),
            Err(Error::EmptySpectrum)
        ));
    }

    #[test]
    fn normalization_and_roots() {
        let s = Spectrum::parse("12: 0^2, 6^1, 4^1").unwrap();
        let n = s.normalized();
        assert_eq!(n.conductor(), 6);
        assert_eq!(n.mult(3), 1);
        assert_eq!(s.mult_of_root(2, 1), 1);
        assert_eq!(s.mult_of_root(3, 1), 1);
        assert_eq!(s.mult_of_root(4, 1), 0);
        assert_eq!(s.with_conductor(24).unwrap().normalized(), n);
        assert_eq!(s.eigenvalue(6), Cyclotomic::from_int(-1));
    }

    #[test]
    fn json_round_trip() {
        let s = Spectrum::parse("6: 0^2, 3^1").unwrap();
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"conductor": 6, "mults": {"0": 2, "3": 1}})
        );
        assert_eq!(serde_json::from_value::<Spectrum>(j).unwrap(), s);
    }

    #[test]
    fn action_validation() {
        let s = Spectrum::trivial(1).unwrap();
        assert!(HypersurfaceAction::new(3, s).is_err());
        assert!(HypersurfaceAction::new(1, Spectrum::trivial(3).unwrap()).is_err());
        assert_eq!(HypersurfaceAction::trivial(2, 4).unwrap().n(), 2);
    }
}
