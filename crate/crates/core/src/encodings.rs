//! Nucleotide identities and their edge encodings.
//!
//! A Hoogsteen (H) edge is two qubits: the first distinguishes purine from
//! pyrimidine, the second imino from enol. A Watson-Crick (WC) edge is three
//! qubits. A qubit is `|0>` for an acceptor (lower energy) atom and `|1>` for
//! a donor (higher energy) atom.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{recognize, ProtocolConfig};
use crate::scalar::Real;
use crate::statevec::{ket_string, parse_bits, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Base {
    A,
    T,
    G,
    C,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::T, Base::G, Base::C];

    /// Watson-Crick partner.
    pub fn partner(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::T => Base::A,
            Base::G => Base::C,
            Base::C => Base::G,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tautomer {
    Canonical,
    Rare,
}

/// A base in one of its two tautomeric classes; the rare form prints as `N*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BaseCode {
    pub base: Base,
    pub tautomer: Tautomer,
}

impl BaseCode {
    pub const fn canonical(base: Base) -> Self {
        Self {
            base,
            tautomer: Tautomer::Canonical,
        }
    }

    pub const fn rare(base: Base) -> Self {
        Self {
            base,
            tautomer: Tautomer::Rare,
        }
    }

    pub fn is_canonical(self) -> bool {
        self.tautomer == Tautomer::Canonical
    }

    /// All eight codes: canonical A, T, G, C then the rare forms.
    pub fn all() -> impl Iterator<Item = BaseCode> {
        Base::ALL
            .into_iter()
            .map(BaseCode::canonical)
            .chain(Base::ALL.into_iter().map(BaseCode::rare))
    }
}

impl From<Base> for BaseCode {
    fn from(base: Base) -> Self {
        Self::canonical(base)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Base::A => "A",
            Base::T => "T",
            Base::G => "G",
            Base::C => "C",
        };
        f.write_str(s)
    }
}

impl fmt::Display for BaseCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tautomer {
            Tautomer::Canonical => write!(f, "{}", self.base),
            Tautomer::Rare => write!(f, "{}*", self.base),
        }
    }
}

impl FromStr for BaseCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, tautomer) = match s.strip_suffix('*') {
            Some(rest) => (rest, Tautomer::Rare),
            None => (s, Tautomer::Canonical),
        };
        let base = match name {
            "A" | "a" => Base::A,
            "T" | "t" => Base::T,
            "G" | "g" => Base::G,
            "C" | "c" => Base::C,
            _ => return Err(Error::BadPattern(s.to_owned())),
        };
        Ok(Self { base, tautomer })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    Hoogsteen,
    WatsonCrick,
}

impl Edge {
    pub fn width(self) -> usize {
        match self {
            Edge::Hoogsteen => 2,
            Edge::WatsonCrick => 3,
        }
    }
}

/// Computational-basis pattern of an edge; `bits` is read MSB first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgePattern {
    pub edge: Edge,
    pub bits: u8,
}

impl EdgePattern {
    pub fn new(edge: Edge, bits: u8) -> Result<Self> {
        if usize::from(bits) >= 1 << edge.width() {
            return Err(Error::BadPattern(format!("{bits:b}")));
        }
        Ok(Self { edge, bits })
    }

    /// Parses a Hoogsteen (2-char) or Watson-Crick (3-char) bit string.
    pub fn parse(s: &str) -> Result<Self> {
        let edge = match s.len() {
            2 => Edge::Hoogsteen,
            3 => Edge::WatsonCrick,
            _ => return Err(Error::BadPattern(s.to_owned())),
        };
        let bits = parse_bits(s)? as u8;
        Ok(Self { edge, bits })
    }

    pub fn ket(self) -> String {
        ket_string(usize::from(self.bits), self.edge.width())
    }

    /// Number of donor atoms (`|1>` qubits): the proton count of the edge.
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn state<T: Real>(self) -> StateVector<T> {
        StateVector::basis(self.edge.width(), usize::from(self.bits))
            .expect("pattern fits its edge")
    }
}

impl fmt::Display for EdgePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.ket())
    }
}

/// H-edge pattern: A=01, T=10, G=00, C=11; a rare tautomer flips the imino/enol bit.
pub fn h_edge_pattern(b: BaseCode) -> EdgePattern {
    let canonical = match b.base {
        Base::A => 0b01,
        Base::T => 0b10,
        Base::G => 0b00,
        Base::C => 0b11,
    };
    let bits = match b.tautomer {
        Tautomer::Canonical => canonical,
        Tautomer::Rare => canonical ^ 0b01,
    };
    EdgePattern {
        edge: Edge::Hoogsteen,
        bits,
    }
}

pub fn h_edge_state<T: Real>(b: BaseCode) -> StateVector<T> {
    h_edge_pattern(b).state()
}

/// WC-edge pattern before recognition: A=101, T=010, G=011, C=100.
/// Only defined for canonical tautomers.
pub fn wc_initial_pattern(b: BaseCode) -> Result<EdgePattern> {
    if !b.is_canonical() {
        return Err(Error::UnsupportedEncoding {
            base: b.to_string(),
            edge: "WC",
        });
    }
    let bits = match b.base {
        Base::A => 0b101,
        Base::T => 0b010,
        Base::G => 0b011,
        Base::C => 0b100,
    };
    Ok(EdgePattern {
        edge: Edge::WatsonCrick,
        bits,
    })
}

pub fn wc_initial_state<T: Real>(b: BaseCode) -> Result<StateVector<T>> {
    Ok(wc_initial_pattern(b)?.state())
}

/// Bitwise complement of an H-edge pattern.
pub fn complement_pattern(p: EdgePattern) -> Result<EdgePattern> {
    if p.edge != Edge::Hoogsteen {
        return Err(Error::WrongEdge);
    }
    Ok(EdgePattern {
        edge: Edge::Hoogsteen,
        bits: !p.bits & 0b11,
    })
}

/// Recognition-level pairing: the H-edge patterns are bitwise complements.
pub fn is_complementary(b1: BaseCode, b2: BaseCode) -> bool {
    h_edge_pattern(b1).bits ^ h_edge_pattern(b2).bits == 0b11
}

/// Every base code whose H edge complements `pattern`, i.e. the candidates a
/// polymerase would select against it. Rare tautomers are included on request.
pub fn recognize_partners(pattern: EdgePattern, include_rare: bool) -> Result<Vec<BaseCode>> {
    let target = complement_pattern(pattern)?;
    Ok(BaseCode::all()
        .filter(|b| include_rare || b.is_canonical())
        .filter(|&b| h_edge_pattern(b) == target)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentClass {
    Canonical,
    Rare,
}

/// Classifies a basis component of `|b>_WC,Q` as the canonical tautomer (the
/// pre-recognition pattern) or a rare one.
pub fn classify_component(b: BaseCode, ket: &str) -> Result<ComponentClass> {
    let initial = wc_initial_pattern(b)?;
    let recognized = recognize::<f64>(b, &ProtocolConfig::default())?;
    let amp = recognized
        .amplitude_of(ket)
        .map_err(|_| Error::OutsideSupport {
            base: b.to_string(),
            ket: ket.to_owned(),
        })?;
    if amp.norm() <= f64::AMP_CUTOFF {
        return Err(Error::OutsideSupport {
            base: b.to_string(),
            ket: ket.to_owned(),
        });
    }
    Ok(if ket == initial.ket() {
        ComponentClass::Canonical
    } else {
        ComponentClass::Rare
    })
}
