//! Symbolic definitions of the seventeen categories and the published reference data.
//!
//! Corner and edge naming: corners A–E run counterclockwise and edge `x` joins
//! the corner before `X` to `X`, so a = EA, b = AB, c = BC, d = CD, e = DE.
//! Corner `X` is therefore flanked by its incoming edge `x` and its outgoing
//! edge (the next letter).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CornerLabel {
    A,
    B,
    C,
    D,
    E,
}

impl CornerLabel {
    pub const ALL: [CornerLabel; 5] = [Self::A, Self::B, Self::C, Self::D, Self::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i % 5]
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' => Some(Self::A),
            'B' => Some(Self::B),
            'C' => Some(Self::C),
            'D' => Some(Self::D),
            'E' => Some(Self::E),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }

    /// Edge arriving at this corner when walking counterclockwise.
    pub fn incoming(self) -> EdgeLabel {
        EdgeLabel::from_index(self.index())
    }

    /// Edge leaving this corner when walking counterclockwise.
    pub fn outgoing(self) -> EdgeLabel {
        EdgeLabel::from_index(self.index() + 1)
    }
}

impl fmt::Display for CornerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    A,
    B,
    C,
    D,
    E,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 5] = [Self::A, Self::B, Self::C, Self::D, Self::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i % 5]
    }

    pub fn as_char(self) -> char {
        (b'a' + self as u8) as char
    }

    /// The two corners this edge joins, in counterclockwise order.
    pub fn endpoints(self) -> (CornerLabel, CornerLabel) {
        let i = self.index();
        (CornerLabel::from_index(i + 4), CornerLabel::from_index(i))
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Multiplicities of the five corners, e.g. `2C+A+E`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multiset(pub [u32; 5]);

impl Multiset {
    pub fn count(&self, c: CornerLabel) -> u32 {
        self.0[c.index()]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Angle sum in whatever unit `angles` uses.
    pub fn angle_sum(&self, angles: &[f64; 5]) -> f64 {
        self.0.iter().zip(angles).map(|(&k, &a)| k as f64 * a).sum()
    }

    pub fn from_word(word: &str) -> Option<Self> {
        let mut m = [0u32; 5];
        for ch in word.chars() {
            m[CornerLabel::from_char(ch)?.index()] += 1;
        }
        Some(Self(m))
    }
}

impl fmt::Display for Multiset {
    /// Conventional notation: larger multiplicities first, then alphabetical.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(u32, CornerLabel)> = CornerLabel::ALL
            .iter()
            .filter(|c| self.count(**c) > 0)
            .map(|&c| (self.count(c), c))
            .collect();
        terms.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|&(k, c)| if k == 1 { c.to_string() } else { format!("{k}{c}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse corner sum `{0}`")]
pub struct ParseMultisetError(String);

impl FromStr for Multiset {
    type Err = ParseMultisetError;

    /// Accepts `2C+A+E`, `3D`, `0B+3E+A` (zero terms vanish).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMultisetError(s.to_string());
        let mut m = [0u32; 5];
        for term in s.split('+') {
            let term = term.trim();
            let letter = term.chars().last().ok_or_else(err)?;
            let corner = CornerLabel::from_char(letter).ok_or_else(err)?;
            let digits = &term[..term.len() - 1];
            let k = if digits.is_empty() {
                1
            } else {
                digits.parse::<u32>().map_err(|_| err())?
            };
            m[corner.index()] += k;
        }
        Ok(Self(m))
    }
}

/// A linear relation `Σ kᵢ·Xᵢ = 360°`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleRelation {
    pub coefficients: Multiset,
}

impl AngleRelation {
    pub const TARGET_DEG: f64 = 360.0;

    fn parse(s: &str) -> Self {
        Self {
            coefficients: s.parse().expect("built-in relation"),
        }
    }

    /// Signed residual in degrees.
    pub fn residual_deg(&self, angles_deg: &[f64; 5]) -> f64 {
        self.coefficients.angle_sum(angles_deg) - Self::TARGET_DEG
    }
}

impl fmt::Display for AngleRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 360", self.coefficients)
    }
}

/// Integer parameters of a category instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
}

impl Params {
    pub const NONE: Params = Params { m: None, n: None };

    pub fn n(n: u32) -> Self {
        Self { m: None, n: Some(n) }
    }

    pub fn mn(m: u32, n: u32) -> Self {
        Self {
            m: Some(m),
            n: Some(n),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_none() && self.n.is_none()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.n) {
            (Some(m), Some(n)) => write!(f, "(m,n)=({m},{n})"),
            (None, Some(n)) => write!(f, "n={n}"),
            (Some(m), None) => write!(f, "m={m}"),
            (None, None) => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeeschNumber {
    Finite(u32),
    Infinite,
}

impl fmt::Display for HeeschNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(k) => write!(f, "{k}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

/// Which integer parameters a category takes and which values exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamDomain {
    Fixed,
    N { min: u32, max: Option<u32> },
    /// m ≥ 0, n ≥ 1, m + n ≥ min_sum
    MN { min_sum: u32 },
}

impl ParamDomain {
    pub fn describe(&self) -> String {
        match self {
            Self::Fixed => "no parameters".into(),
            Self::N { min, max: None } => format!("n >= {min}"),
            Self::N { min, max: Some(max) } => format!("n in {min}..={max}"),
            Self::MN { min_sum } => format!("m >= 0, n >= 1, m + n >= {min_sum}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpotClass {
    #[serde(rename = "EEC")]
    Eec,
    #[serde(rename = "NEEC")]
    Neec,
}

impl fmt::Display for SpotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Eec => "EEC",
            Self::Neec => "NEEC",
        })
    }
}

/// A spot named explicitly in the reference remarks, with its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkSpot {
    pub spot: Multiset,
    pub class: SpotClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkEntry {
    pub category: u32,
    pub params: Params,
    pub spots: Vec<RemarkSpot>,
}

/// One printed table row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub category: u32,
    pub params: Params,
    pub angles_deg: [f64; 5],
    /// Counterclockwise corner words around each corner A..E; absent for rows
    /// identified with a plane-tiling type instead.
    pub arrangements: Option<[String; 5]>,
    pub expected_heesch: HeeschNumber,
    pub note: Option<String>,
}

/// A category with its parameters substituted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub id: u32,
    pub params: Params,
    /// Relations as stated for the category.
    pub relations: Vec<AngleRelation>,
    /// Extra relations needed to pin the shape down (read off the remarks).
    pub supplementary: Vec<AngleRelation>,
    /// Equal-length classes; lengths differ between classes.
    pub edge_classes: Vec<Vec<EdgeLabel>>,
    pub domain: ParamDomain,
    pub expected_heesch: HeeschNumber,
    pub type_tile: Option<String>,
}

impl CategorySpec {
    pub fn all_relations(&self) -> impl Iterator<Item = &AngleRelation> {
        self.relations.iter().chain(&self.supplementary)
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            format!("Category {}", self.id)
        } else {
            format!("Category {} {}", self.id, self.params)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown category {0} (valid: 1..=17)")]
    UnknownCategory(u32),
    #[error("category {category}: {params} outside the domain ({reason})")]
    ParamOutOfDomain {
        category: u32,
        params: Params,
        reason: String,
    },
}

fn edge_classes(s: &str) -> Vec<Vec<EdgeLabel>> {
    s.split('|')
        .map(|cls| {
            cls.chars()
                .map(|c| EdgeLabel::from_index((c as u8 - b'a') as usize))
                .collect()
        })
        .collect()
}

fn domain(id: u32) -> ParamDomain {
    match id {
        3 => ParamDomain::N { min: 1, max: None },
        4 => ParamDomain::MN { min_sum: 3 },
        5 | 11 | 12 => ParamDomain::N { min: 1, max: Some(3) },
        8 => ParamDomain::N { min: 1, max: Some(5) },
        16 | 17 => ParamDomain::N { min: 1, max: Some(2) },
        _ => ParamDomain::Fixed,
    }
}

/// Wording used for parameter values that do not exist.
fn nonexistence(id: u32) -> &'static str {
    match id {
        3 => "the case of n = 0 does not exist",
        4 => "requires m >= 0, n >= 1 and m + n >= 3",
        5 | 11 | 12 => "the cases of n = 0 and n >= 4 do not exist",
        8 => "the cases of n = 0 and n >= 6 do not exist",
        16 | 17 => "the cases of n = 0 and n >= 3 do not exist",
        _ => "this category takes no parameters",
    }
}

fn check_domain(id: u32, p: Params) -> Result<(), CatalogError> {
    let ok = match (domain(id), p.m, p.n) {
        (ParamDomain::Fixed, None, None) => true,
        (ParamDomain::N { min, max }, None, Some(n)) => n >= min && max.map_or(true, |mx| n <= mx),
        (ParamDomain::MN { min_sum }, Some(m), Some(n)) => n >= 1 && m + n >= min_sum,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(CatalogError::ParamOutOfDomain {
            category: id,
            params: p,
            reason: nonexistence(id).to_string(),
        })
    }
}

/// Relations with parameters substituted; no domain check.
pub fn relations_unchecked(id: u32, p: Params) -> Option<(Vec<AngleRelation>, Vec<AngleRelation>)> {
    let m = p.m.unwrap_or(0);
    let n = p.n.unwrap_or(0);
    let stated: Vec<String> = match id {
        1 => vec!["2A+B".into(), "2B+E".into(), "2D+A".into(), "2C+A+E".into()],
        2 => vec!["2A+B".into(), "2C+D".into(), "2B+C+E".into(), "2E+B+D".into()],
        3 => vec!["2A+B".into(), "2C+D".into(), "2E+B+D".into(), format!("{}D+C+E", n + 1)],
        4 => vec!["2A+B".into(), "2D+E".into(), "2C+B+E".into(), format!("{m}B+{n}E+A")],
        5 => vec!["2A+C".into(), "2D+B".into(), "2E+B+C".into(), format!("{}B", n + 2)],
        6 => vec!["2A+C".into(), "2D+B".into(), "3B+A".into(), "2E+B+C".into()],
        7 => vec!["2A+C".into(), "2D+B".into(), "3B+C".into(), "2E+B+C".into()],
        8 => vec!["2A+B".into(), "3D".into(), format!("{}B+C+E", n + 1)],
        9 => vec!["2A+B".into(), "3D".into(), "2B+A".into(), "2C+2E".into()],
        10 => vec!["2A+B".into(), "3D".into(), "3E+B+C".into()],
        11 => vec!["2A+B".into(), "3D".into(), format!("{n}B+2E+C")],
        12 => vec!["2A+B".into(), "3E".into(), format!("{n}B+2D+C")],
        13 => vec!["2A+C".into(), "3B".into(), "5E+D".into()],
        14 => vec!["2A+C".into(), "3B".into(), "3D+B+E".into()],
        15 => vec!["2A+B".into(), "2E+A".into(), "3D+C+E".into()],
        16 => vec![
            "2A+B".into(),
            "2D+B".into(),
            "4C".into(),
            "4E".into(),
            format!("{}B+{n}C", n + 1),
        ],
        17 => vec![
            "2A+B".into(),
            "2D+B".into(),
            "3C".into(),
            "6E".into(),
            format!("{n}C+3B"),
        ],
        _ => return None,
    };
    // The three stated relations of category 15 leave a one-parameter family;
    // its remarks single out the EEC-spot 2C+A = 360, which fixes the shape.
    let extra: Vec<&str> = if id == 15 { vec!["2C+A"] } else { vec![] };
    Some((
        stated.iter().map(|s| AngleRelation::parse(s)).collect(),
        extra.iter().map(|s| AngleRelation::parse(s)).collect(),
    ))
}

fn edge_pattern(id: u32) -> &'static str {
    match id {
        1 | 4 => "abce|d",
        2 | 3 | 8 | 9 | 10 => "abc|de",
        5 | 6 | 7 | 13 | 14 => "abcd|e",
        11 => "a|bcde",
        12 => "ae|bcd",
        15 => "abc|d|e",
        16 | 17 => "a|bcd|e",
        _ => unreachable!(),
    }
}

fn expected_heesch(id: u32, p: Params) -> (HeeschNumber, Option<String>) {
    let ty = match (id, p.m, p.n) {
        (3, None, Some(1)) => Some("Type 6"),
        (4, Some(2), Some(1)) => Some("Type 9"),
        (11, None, Some(1)) => Some("Type 8"),
        (12, None, Some(1)) => Some("Types 1 and 5"),
        _ => None,
    };
    match ty {
        Some(t) => (HeeschNumber::Infinite, Some(format!("convex pentagonal tile belonging to {t}"))),
        None => (HeeschNumber::Finite(1), None),
    }
}

/// Category `id` with parameters substituted.
pub fn get_category(id: u32, params: Params) -> Result<CategorySpec, CatalogError> {
    if !(1..=17).contains(&id) {
        return Err(CatalogError::UnknownCategory(id));
    }
    check_domain(id, params)?;
    Ok(instantiate(id, params))
}

/// Like [`get_category`] but skips the domain check, so the solver can be
/// asked about values that do not exist.
pub fn get_category_unchecked(id: u32, params: Params) -> Result<CategorySpec, CatalogError> {
    if !(1..=17).contains(&id) {
        return Err(CatalogError::UnknownCategory(id));
    }
    Ok(instantiate(id, params))
}

fn instantiate(id: u32, params: Params) -> CategorySpec {
    let (relations, supplementary) = relations_unchecked(id, params).unwrap();
    let (expected_heesch, type_tile) = expected_heesch(id, params);
    CategorySpec {
        id,
        params,
        relations,
        supplementary,
        edge_classes: edge_classes(edge_pattern(id)),
        domain: domain(id),
        expected_heesch,
        type_tile,
    }
}

/// Every parameter choice that has a printed table row, in table order.
pub fn instances() -> Vec<(u32, Params)> {
    reference_rows()
        .iter()
        .map(|r| (r.category, r.params))
        .collect()
}

// (category, m, n, angles, arrangement words or "" for type rows)
type RawRow = (u32, Option<u32>, Option<u32>, [f64; 5], &'static str);

const ROWS: &[RawRow] = &[
    (1, None, None, [113.64, 132.72, 75.90, 123.18, 94.56], "AAB BAA CEAC DDA EBB"),
    (2, None, None, [141.33, 77.34, 122.00, 116.00, 83.33], "AAB BCEB CCD DEBE EDEB"),
    (3, None, Some(1), [141.33, 77.34, 160.67, 38.67, 122.00], ""),
    (3, None, Some(2), [141.33, 77.34, 170.33, 19.33, 131.66], "AAB BAA CEDDD DCC EDEB"),
    (3, None, Some(3), [141.33, 77.34, 173.56, 12.89, 134.89], "AAB BAA CEDDDD DCC EDEB"),
    (3, None, Some(4), [141.33, 77.34, 175.17, 9.67, 136.50], "AAB BAA CEDDDDD DCC EDEB"),
    (4, Some(0), Some(3), [125.86, 108.28, 86.83, 140.98, 78.05], "AEEE BAA CBEC DDE EDD"),
    (4, Some(1), Some(2), [137.06, 85.88, 102.79, 145.74, 68.53], "AEEB BAA CEBC DDE EDD"),
    (4, Some(2), Some(1), [141.33, 77.34, 109.33, 148.00, 64.00], ""),
    (4, Some(0), Some(4), [150.55, 58.90, 124.37, 153.82, 52.36], "AEEEE BAA CBEC DDE EDD"),
    (4, Some(1), Some(3), [151.79, 56.42, 126.49, 154.70, 50.60], "AEEBE BAA CEBC DDE EDD"),
    (4, Some(2), Some(2), [152.78, 54.45, 128.19, 155.42, 49.16], "AEBBE BAA CBEC DDE EDD"),
    (4, Some(3), Some(1), [153.59, 52.82, 129.61, 156.02, 47.96], "AEBBB BAA CBEC DDE EDD"),
    (4, Some(0), Some(5), [158.47, 43.06, 138.32, 159.85, 40.31], "AEEEEE BAA CBEC DDE EDD"),
    (4, Some(1), Some(4), [158.83, 42.33, 138.98, 160.15, 39.71], "AEBEEE BAA CBEC DDE EDD"),
    (4, Some(2), Some(3), [159.16, 41.67, 139.58, 160.42, 39.16], "AEBBEE BAA CBEC DDE EDD"),
    (4, Some(3), Some(2), [159.46, 41.07, 140.13, 160.67, 38.66], "AEBBBE BAA CBEC DDE EDD"),
    (4, Some(4), Some(1), [159.74, 40.52, 140.64, 160.90, 38.20], "AEBBBB BAA CBEC DDE EDD"),
    (5, None, Some(1), [133.47, 120.0, 93.07, 120.0, 73.47], "ACA BBB CAA DBD EECB"),
    (5, None, Some(2), [129.13, 90.0, 101.74, 135.0, 84.13], "ACA BBBB CAA DBD EECB"),
    (5, None, Some(3), [124.74, 72.0, 110.51, 144.0, 88.74], "ACA BBBBB CAA DBD EECB"),
    (6, None, None, [126.42, 77.86, 107.15, 141.07, 87.49], "ACA BBAB CAA DBD EECB"),
    (7, None, None, [128.22, 85.48, 103.56, 137.26, 85.48], "ACA BBCB CAA DBD EECB"),
    (8, None, Some(1), [140.0, 80.0, 117.88, 120.0, 82.12], "AAB BAA CBBE DDD ECBB"),
    (8, None, Some(2), [156.0, 48.0, 146.87, 120.0, 69.13], "AAB BAA CBBBE DDD ECBBB"),
    (8, None, Some(3), [162.86, 34.29, 162.34, 120.0, 60.52], "AAB BAA CBBBBE DDD ECBBBB"),
    (8, None, Some(4), [166.67, 26.67, 171.91, 120.0, 54.76], "AAB BAA CBBBBBE DDD ECBBBBB"),
    (8, None, Some(5), [169.09, 21.82, 178.36, 120.0, 50.73], "AAB BAA CBBBBBBE DDD ECBBBBBB"),
    (9, None, None, [120.0, 120.0, 90.0, 120.0, 90.0], "ABB BAA CECE DDD ECEC"),
    (10, None, None, [167.34, 25.32, 173.67, 120.0, 53.67], "AAB BAA CBEEE DDD ECEEB"),
    (11, None, Some(1), [139.11, 81.78, 120.0, 120.0, 79.11], ""),
    (11, None, Some(2), [158.39, 43.22, 163.22, 120.0, 55.17], "AAB BAA CBBEE DDD ECBBE"),
    (11, None, Some(3), [165.39, 29.23, 178.45, 120.0, 46.94], "AAB BAA CBBBEE DDD ECBBBE"),
    (12, None, Some(1), [150.0, 60.0, 120.0, 90.0, 120.0], ""),
    (12, None, Some(2), [161.27, 37.47, 157.47, 63.80, 120.0], "AAB BAA CBDDB DCBBD EEE"),
    (12, None, Some(3), [166.70, 26.61, 173.21, 53.49, 120.0], "AAB BAA CBBDDB DCBBBD EEE"),
    (13, None, None, [154.68, 120.0, 50.64, 178.35, 36.33], "AAC BBB CAA DEEEEE EDEEEE"),
    (14, None, None, [92.61, 120.0, 174.78, 43.69, 108.92], "ACA BBB CAA DBDDE EDDDB"),
    (15, None, None, [108.0, 144.0, 126.0, 36.0, 126.0], "AEE BAA CEDDD DCEDD EEA"),
    (16, None, Some(1), [112.5, 135.0, 90.0, 112.5, 90.0], "AAB BCB CCCC DBD EEEE"),
    (16, None, Some(2), [150.0, 60.0, 90.0, 150.0, 90.0], "AAB BCCBB CCCC DBD EEEE"),
    (17, None, Some(1), [140.0, 80.0, 120.0, 140.0, 60.0], "AAB BCBB CCC DBD EEEEEE"),
    (17, None, Some(2), [160.0, 40.0, 120.0, 160.0, 60.0], "AAB BCCBB CCC DBD EEEEEE"),
];

/// All rows of the seventeen tables, in table order.
pub fn reference_rows() -> Vec<ReferenceRow> {
    ROWS.iter()
        .map(|&(category, m, n, angles_deg, words)| {
            let params = Params { m, n };
            let (expected_heesch, note) = expected_heesch(category, params);
            let arrangements = if words.is_empty() {
                None
            } else {
                let w: Vec<String> = words.split(' ').map(String::from).collect();
                Some([
                    w[0].clone(),
                    w[1].clone(),
                    w[2].clone(),
                    w[3].clone(),
                    w[4].clone(),
                ])
            };
            ReferenceRow {
                category,
                params,
                angles_deg,
                arrangements,
                expected_heesch,
                note,
            }
        })
        .collect()
}

fn spots(class: SpotClass, list: &[String]) -> Vec<RemarkSpot> {
    list.iter()
        .map(|s| RemarkSpot {
            spot: s.parse().expect("built-in spot"),
            class,
        })
        .collect()
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Spots named in the remarks (and the worked example for category 1),
/// for one instance.
pub fn remark_spots(id: u32, p: Params) -> Vec<RemarkSpot> {
    use SpotClass::{Eec, Neec};
    let n = p.n.unwrap_or(0);
    let m = p.m.unwrap_or(0);
    let (eec, neec): (Vec<String>, Vec<String>) = match id {
        1 => (strs(&["2C+A+E"]), vec![]),
        3 if n == 1 => (strs(&["B+C+E", "3D+2E"]), strs(&["2A+2D"])),
        3 => (vec![format!("{}D+2E", 2 * n + 1)], vec![format!("{}D+2A", 2 * n)]),
        4 if m == 2 && n == 1 => (strs(&["3B+2E"]), vec![]),
        4 if m != 0 => (vec![format!("{}B+{}E", 2 * m - 1, 2 * n)], vec![]),
        5 if n == 1 => (vec![], strs(&["2B+D", "3D", "2E+C+D"])),
        5 if n == 3 => (vec![], strs(&["3B+D"])),
        7 => (vec![], strs(&["2D+E", "2B+C+E", "3E+C"])),
        8 => (vec![], vec![format!("{}B+D", 2 * n + 1)]),
        9 => (
            strs(&["3A", "3B", "4C", "3C+E", "3E+C", "4E"]),
            strs(&["A+B+D", "2A+D", "2D+A", "2B+D", "2D+B"]),
        ),
        10 => (strs(&["4E+B+D"]), vec![]),
        11 => {
            let mut e = vec![format!("{}B+2E+D", 2 * n - 1)];
            if n == 1 {
                e.extend(strs(&["3C", "2C+D", "2D+C", "2E+B+D"]));
            }
            (e, vec![])
        }
        12 => {
            let mut e = vec![format!("{}B+2D+E", 2 * n - 1)];
            let mut ne = vec![];
            if n == 1 {
                e.extend(strs(&[
                    "A+C+D", "A+D+E", "3C", "2B+A+D", "2B+2C", "2D+B+E", "4D", "4B+C", "3B+2D",
                    "6B",
                ]));
                ne = strs(&["2C+E", "2B+C+E", "2B+2E", "4B+E"]);
            }
            (e, ne)
        }
        14 => (vec![], strs(&["4D+2A"])),
        15 => (
            strs(&["2C+A", "10D"]),
            strs(&[
                "A+C+E", "3A+D", "2B+2D", "3D+A+B", "3D+2C", "3D+2E", "4D+2A", "6D+B", "7D+A",
            ]),
        ),
        16 if n == 1 => (vec![], strs(&["A+B+D", "2B+E", "3C+E", "2C+2E", "3E+C"])),
        16 => (
            strs(&["6B"]),
            strs(&[
                "A+B+D", "2B+A+C", "2B+A+E", "2B+C+D", "2B+D+E", "3C+E", "2C+2E", "3E+C",
                "3B+C+E", "3B+2E",
            ]),
        ),
        17 if n == 1 => (
            vec![],
            strs(&["A+B+D", "2B+A+E", "2B+D+E", "2C+2E", "3B+2E", "4E+C"]),
        ),
        17 => (
            strs(&["6B+C", "9B"]),
            strs(&[
                "A+B+D", "2B+A+C", "2B+C+D", "2C+2E", "2B+2E+A", "2B+2E+D", "4E+C", "5B+A",
                "5B+D", "3B+2E+C", "6B+2E",
            ]),
        ),
        _ => (vec![], vec![]),
    };
    let mut out = spots(Eec, &eec);
    out.extend(spots(Neec, &neec));
    out
}

/// Reference data bundle. Verification takes one of these so that faults can
/// be injected into a copy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub rows: Vec<ReferenceRow>,
    pub remarks: Vec<RemarkEntry>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::standard()
    }
}

impl Catalog {
    pub fn standard() -> Self {
        let rows = reference_rows();
        let remarks = rows
            .iter()
            .map(|r| RemarkEntry {
                category: r.category,
                params: r.params,
                spots: remark_spots(r.category, r.params),
            })
            .collect();
        Self { rows, remarks }
    }

    pub fn row(&self, id: u32, params: Params) -> Option<&ReferenceRow> {
        self.rows
            .iter()
            .find(|r| r.category == id && r.params == params)
    }

    pub fn row_mut(&mut self, id: u32, params: Params) -> Option<&mut ReferenceRow> {
        self.rows
            .iter_mut()
            .find(|r| r.category == id && r.params == params)
    }

    pub fn remarks_for(&self, id: u32, params: Params) -> &[RemarkSpot] {
        self.remarks
            .iter()
            .find(|r| r.category == id && r.params == params)
            .map_or(&[], |r| &r.spots)
    }

    pub fn remarks_mut(&mut self, id: u32, params: Params) -> Option<&mut Vec<RemarkSpot>> {
        self.remarks
            .iter_mut()
            .find(|r| r.category == id && r.params == params)
            .map(|r| &mut r.spots)
    }

    /// One JSON object per category: relations (symbolic and per row),
    /// edge classes, parameter domain, reference rows and remark spots.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = Vec::new();
        for id in 1..=17u32 {
            let rows: Vec<&ReferenceRow> = self.rows.iter().filter(|r| r.category == id).collect();
            let spec = get_category_unchecked(id, rows[0].params).unwrap();
            let instances: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let s = get_category_unchecked(id, r.params).unwrap();
                    serde_json::json!({
                        "params": r.params,
                        "relations": s.relations.iter().map(|x| x.coefficients.to_string()).collect::<Vec<_>>(),
                        "supplementary": s.supplementary.iter().map(|x| x.coefficients.to_string()).collect::<Vec<_>>(),
                        "expected_heesch": r.expected_heesch.to_string(),
                        "angles_deg": r.angles_deg,
                        "arrangements": r.arrangements,
                        "note": r.note,
                        "remark_spots": self.remarks_for(id, r.params).iter().map(|s| {
                            serde_json::json!({"spot": s.spot.to_string(), "class": s.class})
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.push(serde_json::json!({
                "category": id,
                "edge_classes": spec.edge_classes.iter()
                    .map(|c| c.iter().map(|e| e.as_char()).collect::<String>())
                    .collect::<Vec<_>>(),
                "param_domain": spec.domain,
                "instances": instances,
            }));
        }
        serde_json::Value::Array(out)
    }
}
