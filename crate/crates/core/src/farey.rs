//! Generalized Farey symbols: parsing, validation, the Iguanodon family and
//! triangulation of the associated ideal polygon by mediant contraction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid symbol: {0}")]
    Validation(String),
    #[error("{0}")]
    Domain(String),
    #[error("symbol has fewer than 3 distinct vertices")]
    DegenerateSymbol,
    #[error("no contractible vertex; the symbol does not bound a Farey polygon")]
    NoMediant,
}

/// A reduced fraction with non-negative denominator; `1/0` is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    num: i64,
    den: u64,
}

impl ExtendedRational {
    pub const INFINITY: Self = Self { num: 1, den: 0 };

    pub fn new(num: i64, den: u64) -> Result<Self, FareyError> {
        if den == 0 {
            return if num == 1 {
                Ok(Self::INFINITY)
            } else {
                Err(FareyError::Validation(format!(
                    "{num}/0 is not a valid value"
                )))
            };
        }
        if num.unsigned_abs().gcd(&den) != 1 {
            return Err(FareyError::Validation(format!(
                "{num}/{den} is not reduced"
            )));
        }
        Ok(Self { num, den })
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// `a_i b_j - b_i a_j` on the raw pairs.
    pub fn det(&self, other: &Self) -> i128 {
        self.num as i128 * other.den as i128 - self.den as i128 * other.num as i128
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => {
                (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
            }
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.num),
            d => write!(f, "{}/{}", self.num, d),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::Syntax(format!("expected a fraction, found {s:?}"));
        match s.split_once('/') {
            None => s.parse::<i64>().map(Self::integer).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i64 = p.parse().map_err(|_| bad())?;
                let q: u64 = q.parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(FareyError::Validation(format!("zero denominator in {s:?}")));
                }
                Self::new(p, q)
            }
        }
    }
}

/// Side label: `o`, `b`, or a free integer paired with exactly one other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    Even,
    Odd,
    Free(u32),
}

impl Pairing {
    fn token(&self) -> String {
        match self {
            Pairing::Even => "o".into(),
            Pairing::Odd => "b".into(),
            Pairing::Free(k) => k.to_string(),
        }
    }

    fn parse_token(tok: &str) -> Result<Self, FareyError> {
        match tok {
            "o" => Ok(Pairing::Even),
            "b" => Ok(Pairing::Odd),
            _ => match tok.parse::<u32>() {
                Ok(k) if k > 0 => Ok(Pairing::Free(k)),
                _ => Err(FareyError::Syntax(format!(
                    "expected a pairing (o, b or a positive integer), found {tok:?}"
                ))),
            },
        }
    }

    fn json_name(&self) -> String {
        match self {
            Pairing::Free(k) => format!("free:{k}"),
            other => other.token(),
        }
    }

    fn from_json_name(s: &str) -> Result<Self, FareyError> {
        match s.strip_prefix("free:") {
            Some(k) => match k.parse::<u32>() {
                Ok(k) if k > 0 => Ok(Pairing::Free(k)),
                _ => Err(FareyError::Syntax(format!("bad free label {s:?}"))),
            },
            None if s == "o" || s == "b" => Pairing::parse_token(s),
            None => Err(FareyError::Syntax(format!("unknown pairing {s:?}"))),
        }
    }
}

/// Fractions `x_0 < .. < x_n` with pairings on the `n + 2` sides
/// `(inf, x_0), (x_0, x_1), .., (x_n, inf)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FareySymbol {
    fractions: Vec<ExtendedRational>,
    pairings: Vec<Pairing>,
}

impl FareySymbol {
    pub fn new(
        fractions: Vec<ExtendedRational>,
        pairings: Vec<Pairing>,
    ) -> Result<Self, FareyError> {
        if fractions.is_empty() {
            return Err(FareyError::Validation("no finite fractions".into()));
        }
        if pairings.len() != fractions.len() + 1 {
            return Err(FareyError::Validation(format!(
                "{} fractions need {} pairings, found {}",
                fractions.len(),
                fractions.len() + 1,
                pairings.len()
            )));
        }
        for x in &fractions {
            if x.is_infinite() {
                return Err(FareyError::Validation(
                    "inf may only appear at the ends".into(),
                ));
            }
            ExtendedRational::new(x.num, x.den)?;
        }
        if let Some(w) = fractions.windows(2).find(|w| w[0] >= w[1]) {
            return Err(FareyError::Validation(format!(
                "fractions not strictly increasing at {} , {}",
                w[0], w[1]
            )));
        }
        let (first, last) = (fractions[0], fractions[fractions.len() - 1]);
        if !first.is_integer() || !last.is_integer() {
            return Err(FareyError::Validation(format!(
                "endpoints {first} and {last} must be integers"
            )));
        }
        if !fractions.iter().any(|x| x.num == 0) {
            return Err(FareyError::Validation("0 does not occur".into()));
        }
        if let Some(w) = fractions.windows(2).find(|w| w[0].det(&w[1]).abs() != 1) {
            return Err(FareyError::Validation(format!(
                "determinant of {} and {} is {}, expected 1",
                w[0],
                w[1],
                w[0].det(&w[1]).abs()
            )));
        }
        let mut uses: BTreeMap<u32, usize> = BTreeMap::new();
        for p in &pairings {
            if let Pairing::Free(k) = p {
                *uses.entry(*k).or_default() += 1;
            }
        }
        if let Some((k, n)) = uses.iter().find(|(_, &n)| n != 2) {
            return Err(FareyError::Validation(format!(
                "free label {k} used {n} times, expected 2"
            )));
        }
        Ok(Self {
            fractions,
            pairings,
        })
    }

    pub fn fractions(&self) -> &[ExtendedRational] {
        &self.fractions
    }

    pub fn pairings(&self) -> &[Pairing] {
        &self.pairings
    }

    /// Sides in symbol order, each as its two endpoints in increasing order.
    pub fn sides(&self) -> Vec<(ExtendedRational, ExtendedRational)> {
        let inf = ExtendedRational::INFINITY;
        let n = self.fractions.len();
        (0..=n)
            .map(|i| match i {
                0 => (self.fractions[0], inf),
                i if i == n => (self.fractions[n - 1], inf),
                i => (self.fractions[i - 1], self.fractions[i]),
            })
            .collect()
    }

    pub fn count(&self, kind: Pairing) -> usize {
        self.pairings
            .iter()
            .filter(|p| match (p, kind) {
                (Pairing::Free(_), Pairing::Free(_)) => true,
                (a, b) => **a == b,
            })
            .count()
    }

    pub fn odd_sides(&self) -> usize {
        self.count(Pairing::Odd)
    }

    pub fn even_sides(&self) -> usize {
        self.count(Pairing::Even)
    }

    /// Number of distinct ideal vertices, infinity included.
    pub fn vertex_count(&self) -> usize {
        self.fractions.len() + 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("symbol serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, FareyError> {
        Self::deserialize(value).map_err(|e| FareyError::Syntax(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    fractions: Vec<(i64, u64)>,
    pairings: Vec<String>,
}

impl Serialize for FareySymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SymbolJson {
            fractions: self.fractions.iter().map(|x| (x.num, x.den)).collect(),
            pairings: self.pairings.iter().map(Pairing::json_name).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FareySymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SymbolJson::deserialize(d)?;
        let fractions = raw
            .fractions
            .iter()
            .map(|&(p, q)| {
                if q == 0 {
                    Err(FareyError::Validation(format!(
                        "zero denominator in [{p}, 0]"
                    )))
                } else {
                    ExtendedRational::new(p, q)
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let pairings = raw
            .pairings
            .iter()
            .map(|s| Pairing::from_json_name(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        FareySymbol::new(fractions, pairings).map_err(D::Error::custom)
    }
}

impl fmt::Display for FareySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inf")?;
        for (x, p) in self.fractions.iter().zip(&self.pairings) {
            write!(f, " {} {}", p.token(), x)?;
        }
        write!(f, " {} inf", self.pairings[self.pairings.len() - 1].token())
    }
}

impl FromStr for FareySymbol {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_symbol(s)
    }
}

/// Parses `inf PAIR frac (PAIR frac)* PAIR inf`.
pub fn parse_symbol(text: &str) -> Result<FareySymbol, FareyError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() < 5 || tokens.len().is_multiple_of(2) {
        return Err(FareyError::Syntax(format!(
            "expected `inf PAIR frac (PAIR frac)* PAIR inf`, found {} tokens",
            tokens.len()
        )));
    }
    if tokens[0] != "inf" || tokens[tokens.len() - 1] != "inf" {
        return Err(FareyError::Syntax(
            "symbol must start and end with `inf`".into(),
        ));
    }
    let inner = &tokens[1..tokens.len() - 1];
    let mut fractions = Vec::new();
    let mut pairings = Vec::new();
    for (i, tok) in inner.iter().enumerate() {
        if i % 2 == 0 {
            pairings.push(Pairing::parse_token(tok)?);
        } else {
            if *tok == "inf" {
                return Err(FareyError::Syntax(
                    "`inf` may only appear at the ends".into(),
                ));
            }
            fractions.push(tok.parse::<ExtendedRational>()?);
        }
    }
    FareySymbol::new(fractions, pairings)
}

pub fn format_symbol(s: &FareySymbol) -> String {
    s.to_string()
}

/// Members of the Farey sequence `F(n)` in `[0, 1/2]`, then 1, with Odd
/// interior sides and the two outer sides freely paired.
pub fn iguanodon_symbol(n: u64) -> Result<FareySymbol, FareyError> {
    if n < 2 {
        return Err(FareyError::Domain(format!(
            "Iguanodon index must be at least 2, got {n}"
        )));
    }
    let mut fractions: Vec<ExtendedRational> = (1..=n)
        .flat_map(|q| (0..=q / 2).map(move |p| (p, q)))
        .filter(|&(p, q)| p.gcd(&q) == 1)
        .map(|(p, q)| ExtendedRational {
            num: p as i64,
            den: q,
        })
        .collect();
    fractions.sort();
    fractions.push(ExtendedRational::integer(1));
    let mut pairings = vec![Pairing::Odd; fractions.len() + 1];
    pairings[0] = Pairing::Free(1);
    *pairings.last_mut().unwrap() = Pairing::Free(1);
    FareySymbol::new(fractions, pairings)
}

/// Triangle with vertices in increasing order (infinity last).
pub type Triangle = [ExtendedRational; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    vertices: Vec<ExtendedRational>,
    triangles: Vec<Triangle>,
    side_to_triangles: BTreeMap<(ExtendedRational, ExtendedRational), Vec<usize>>,
}

impl Triangulation {
    pub fn vertices(&self) -> &[ExtendedRational] {
        &self.vertices
    }

    /// Triangles in contraction order.
    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Triangles incident to the side `{a, b}`.
    pub fn incident(&self, a: ExtendedRational, b: ExtendedRational) -> &[usize] {
        self.side_to_triangles
            .get(&side_key(a, b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn side_to_triangles(&self) -> &BTreeMap<(ExtendedRational, ExtendedRational), Vec<usize>> {
        &self.side_to_triangles
    }

    /// Sides shared by two triangles.
    pub fn diagonals(
        &self,
    ) -> impl Iterator<Item = (&(ExtendedRational, ExtendedRational), &Vec<usize>)> {
        self.side_to_triangles
            .iter()
            .filter(|(_, ts)| ts.len() == 2)
    }
}

fn side_key(a: ExtendedRational, b: ExtendedRational) -> (ExtendedRational, ExtendedRational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Position of a side within a triangle's side list `[(u,v), (v,w), (w,u)]`.
pub fn side_slot(t: &Triangle, a: ExtendedRational, b: ExtendedRational) -> Option<usize> {
    let key = side_key(a, b);
    (0..3).find(|&k| side_key(t[k], t[(k + 1) % 3]) == key)
}

/// Repeatedly removes the smallest finite vertex that is the mediant of its
/// two cyclic neighbours. Infinity reads as `-1/0` on the left and `1/0` on
/// the right, so `x_0 = x_1 - 1` and `x_n = x_(n-1) + 1` are contractible.
pub fn triangulate(s: &FareySymbol) -> Result<Triangulation, FareyError> {
    let inf = ExtendedRational::INFINITY;
    let mut ring: Vec<ExtendedRational> = s.fractions.clone();
    ring.push(inf);
    let vertices = ring.clone();
    if ring.len() < 3 {
        return Err(FareyError::DegenerateSymbol);
    }
    let raw = |x: ExtendedRational, left: bool| -> (i64, i64) {
        if x.is_infinite() {
            (if left { -1 } else { 1 }, 0)
        } else {
            (x.num, x.den as i64)
        }
    };
    let mut triangles: Vec<Triangle> = Vec::new();
    while ring.len() > 3 {
        let n = ring.len();
        let found = (0..n - 1).find(|&i| {
            let u = raw(ring[(i + n - 1) % n], true);
            let w = raw(ring[i + 1], false);
            let v = raw(ring[i], false);
            (u.0 + w.0, u.1 + w.1) == v
        });
        let i = found.ok_or(FareyError::NoMediant)?;
        let mut t = [ring[(i + n - 1) % n], ring[i], ring[i + 1]];
        t.sort();
        triangles.push(t);
        ring.remove(i);
    }
    let mut last = [ring[0], ring[1], ring[2]];
    last.sort();
    for k in 0..3 {
        let (a, b) = (last[k], last[(k + 1) % 3]);
        let ok = if b.is_infinite() {
            a.is_integer()
        } else if a.is_infinite() {
            b.is_integer()
        } else {
            a.det(&b).abs() == 1
        };
        if !ok {
            return Err(FareyError::NoMediant);
        }
    }
    triangles.push(last);

    let mut side_to_triangles: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (ti, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            side_to_triangles
                .entry(side_key(t[k], t[(k + 1) % 3]))
                .or_default()
                .push(ti);
        }
    }
    Ok(Triangulation {
        vertices,
        triangles,
        side_to_triangles,
    })
}
