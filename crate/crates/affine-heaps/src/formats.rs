//! Payload parsing and the conversion registry behind the `convert` command.
//!
//! Every supported conversion reads one JSON value (windows may also use the
//! text form `[a1,…,an]`), applies one of the library's bijections, and
//! prints the image as compact JSON. Failures distinguish a request for an
//! unsupported conversion from a payload outside the bijection's domain; the
//! latter carries the library's error name so scripts can match on it.

use crate::diagrams::AlternatingDiagram;
use crate::monodimer::{phi, phi_inverse, upsilon, upsilon_inverse, MarkedPyramid, MdWalk};
use crate::permutations::AffinePermutation;
use crate::ppp::{MarkedPpp, Ppp};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt::{Debug, Display};

/// The object kinds accepted by `--from` and `--to`.
pub const KIND_NAMES: [&str; 7] =
    ["window", "diagram", "walk", "pyramid", "heap", "ppp", "marked-ppp"];

/// The supported `(from, to)` pairs, each one direction of a bijection.
pub const CONVERSIONS: [(&str, &str); 10] = [
    ("window", "diagram"),
    ("diagram", "window"),
    ("diagram", "walk"),
    ("walk", "diagram"),
    ("diagram", "pyramid"),
    ("pyramid", "diagram"),
    ("ppp", "heap"),
    ("heap", "ppp"),
    ("marked-ppp", "diagram"),
    ("diagram", "marked-ppp"),
];

/// Why a conversion did not produce an image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvertError {
    /// The `(from, to)` pair names no supported map: a usage error.
    UnknownConversion { from: String, to: String },
    /// The payload is malformed or outside the map's domain.
    Domain { name: String, message: String },
}

impl Display for ConvertError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConvertError::UnknownConversion { from, to } => {
                write!(f, "no conversion from {from:?} to {to:?}; supported: ")?;
                for (i, (a, b)) in CONVERSIONS.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}->{b}")?;
                }
                Ok(())
            }
            ConvertError::Domain { name, message } => write!(f, "{name}: {message}"),
        }
    }
}

impl std::error::Error for ConvertError {}

/// Wrap a library error, keeping its type name visible in the message.
fn domain<E: Debug + Display>(e: E) -> ConvertError {
    let debug = format!("{e:?}");
    let name: String =
        debug.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
    ConvertError::Domain { name, message: e.to_string() }
}

fn parse_json<T: DeserializeOwned>(kind: &str, payload: &str) -> Result<T, ConvertError> {
    serde_json::from_str(payload).map_err(|e| ConvertError::Domain {
        name: "Payload".into(),
        message: format!("not a valid {kind}: {e}"),
    })
}

/// Windows come either as JSON `{"n":…,"window":[…]}` or as the text form
/// `[a1,…,an]`.
fn parse_window(payload: &str) -> Result<AffinePermutation, ConvertError> {
    let t = payload.trim();
    if t.starts_with('{') {
        parse_json("window", t)
    } else {
        t.parse::<AffinePermutation>().map_err(domain)
    }
}

fn emit<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("library types serialize")
}

/// Apply the bijection direction named by `(from, to)` to a JSON (or window
/// text) payload, returning the image as one line of compact JSON.
pub fn convert(from: &str, to: &str, payload: &str) -> Result<String, ConvertError> {
    match (from, to) {
        ("window", "diagram") => {
            let sigma = parse_window(payload)?;
            let d = AlternatingDiagram::delta(&sigma).map_err(domain)?;
            Ok(emit(&d))
        }
        ("diagram", "window") => {
            let d: AlternatingDiagram = parse_json("diagram", payload)?;
            Ok(emit(&d.delta_inverse()))
        }
        ("diagram", "walk") => {
            let d: AlternatingDiagram = parse_json("diagram", payload)?;
            Ok(emit(&phi(&d)))
        }
        ("walk", "diagram") => {
            let w: MdWalk = parse_json("walk", payload)?;
            Ok(emit(&phi_inverse(&w).map_err(domain)?))
        }
        ("diagram", "pyramid") => {
            let d: AlternatingDiagram = parse_json("diagram", payload)?;
            Ok(emit(&upsilon(&d)))
        }
        ("pyramid", "diagram") => {
            let p: MarkedPyramid = parse_json("pyramid", payload)?;
            Ok(emit(&upsilon_inverse(&p).map_err(domain)?))
        }
        ("ppp", "heap") => {
            let p: Ppp = parse_json("ppp", payload)?;
            Ok(emit(&p.to_heap()))
        }
        ("heap", "ppp") => {
            let h: crate::heaps::Heap = parse_json("heap", payload)?;
            Ok(emit(&Ppp::from_heap(&h).map_err(domain)?))
        }
        ("marked-ppp", "diagram") => {
            let mp: MarkedPpp = parse_json("marked-ppp", payload)?;
            Ok(emit(&mp.to_diagram().map_err(domain)?))
        }
        ("diagram", "marked-ppp") => {
            let d: AlternatingDiagram = parse_json("diagram", payload)?;
            Ok(emit(&MarkedPpp::from_diagram(&d).map_err(domain)?))
        }
        _ => Err(ConvertError::UnknownConversion { from: from.into(), to: to.into() }),
    }
}
