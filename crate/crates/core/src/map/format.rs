//! Plain-text interchange records for maps.
//!
//! ```text
//! uipt-map 1
//! half-edges 6
//! twin 3 4 5 0 1 2
//! next 1 2 0 5 3 4
//! root 0
//! external 1
//! unrevealed -
//! code 06...
//! ```
//!
//! Faces are numbered in order of their smallest half-edge.

use std::fmt::Write;

use super::{CanonicalCode, FaceKind, RootedMap};
use crate::error::{Error, Result};

const MAGIC: &str = "uipt-map 1";

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    let mut s = String::new();
    for x in xs {
        write!(s, " {x}").unwrap();
    }
    s
}

pub(super) fn to_text(map: &RootedMap) -> String {
    let n = map.half_edge_count();
    let unrevealed = match map.unrevealed_face() {
        Some(f) => f.to_string(),
        None => "-".to_string(),
    };
    format!(
        "{MAGIC}\nhalf-edges {n}\ntwin{}\nnext{}\nroot {}\nexternal{}\nunrevealed {unrevealed}\ncode {}\n",
        join(map.twins().iter().copied()),
        join(map.nexts().iter().copied()),
        map.root(),
        join(map.faces_of_kind(FaceKind::External)),
        map.code().to_hex(),
    )
}

fn numbers(rest: &str) -> Result<Vec<usize>> {
    rest.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
        .collect()
}

pub(super) fn from_text(s: &str) -> Result<RootedMap> {
    let mut lines = s.lines();
    if lines.next().map(str::trim) != Some(MAGIC) {
        return Err(Error::Parse("missing map header".into()));
    }
    let mut field = |name: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| Error::Parse(format!("missing {name}")))?;
        let rest = line
            .strip_prefix(name)
            .ok_or_else(|| Error::Parse(format!("expected {name}, found {line:?}")))?;
        Ok(rest.trim().to_string())
    };
    let n: usize = field("half-edges")?.parse().map_err(|_| Error::Parse("bad count".into()))?;
    let twin = numbers(&field("twin")?)?;
    let next = numbers(&field("next")?)?;
    let root: usize = field("root")?.parse().map_err(|_| Error::Parse("bad root".into()))?;
    let external = numbers(&field("external")?)?;
    let unrevealed = field("unrevealed")?;
    let code = field("code")?;
    if twin.len() != n || next.len() != n {
        return Err(Error::Parse("array length does not match half-edge count".into()));
    }
    let plain = RootedMap::from_parts(twin.clone(), next.clone(), vec![FaceKind::Internal; n], root)?;
    let mut face_kind = vec![FaceKind::Internal; plain.face_count()];
    let mut mark = |f: usize, k: FaceKind| -> Result<()> {
        let slot = face_kind.get_mut(f).ok_or_else(|| Error::Parse(format!("no face {f}")))?;
        *slot = k;
        Ok(())
    };
    for f in external {
        mark(f, FaceKind::External)?;
    }
    if unrevealed != "-" {
        let f = unrevealed.parse().map_err(|_| Error::Parse("bad unrevealed face".into()))?;
        mark(f, FaceKind::Unrevealed)?;
    }
    let kind = (0..n).map(|h| face_kind[plain.face(h)]).collect();
    let map = RootedMap::from_parts(twin, next, kind, root)?;
    if CanonicalCode::from_hex(&code)? != map.code() {
        return Err(Error::Parse("code does not match the map".into()));
    }
    Ok(map)
}
