//! Weyl orbits on `X^n_s`: Weyl divisors, Weyl curves, moving curves and
//! the Weyl surfaces of `X^4_8`.

use std::cmp::Reverse;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chow::TwoCycleClass;
use crate::cone::GeneratorCone;
use crate::error::{Error, Result};
use crate::lattice::{
    anticanonical, cremona_curve, cremona_divisor, dm_pairing, index_sets, intersect_div_curve,
    CurveClass, DivisorClass, IndexSet,
};

/// Default bound on the number of classes a BFS may produce.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// Breadth-first closure of `seeds` under `act(·, I)` for every `I` in `sets`.
fn orbit_closure<T, F>(seeds: Vec<T>, sets: &[IndexSet], cap: usize, n: usize, s: usize, act: F) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &IndexSet) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for seed in seeds {
        if seen.insert(seed.clone()) {
            order.push(seed.clone());
            queue.push_back(seed);
        }
    }
    while let Some(x) = queue.pop_front() {
        for set in sets {
            let y = act(&x, set);
            if seen.contains(&y) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::OrbitUnbounded { n, s, cap });
            }
            seen.insert(y.clone());
            order.push(y.clone());
            queue.push_back(y);
        }
    }
    Ok(order)
}

fn cremona_sets(n: usize, s: usize) -> Vec<IndexSet> {
    if s < n + 1 {
        Vec::new()
    } else {
        index_sets(s, n + 1)
    }
}

/// Known type lists, in the customary numbering.
fn known_types(n: usize, s: usize) -> Option<Vec<(i64, Vec<i64>, &'static str)>> {
    let t = |d: i64, m: &[i64], what: &'static str| (d, m.to_vec(), what);
    match (n, s) {
        (3, 7) => Some(vec![
            t(0, &[-1, 0, 0, 0, 0, 0, 0], "exceptional divisor"),
            t(1, &[1, 1, 1, 0, 0, 0, 0], "plane through three points"),
            t(2, &[2, 1, 1, 1, 1, 1, 0], "quadric cone over a twisted cubic"),
            t(3, &[2, 2, 2, 2, 1, 1, 1], "Cayley nodal cubic"),
            t(4, &[3, 2, 2, 2, 2, 2, 2], "quartic with a triple point"),
        ]),
        (4, 8) => Some(vec![
            t(0, &[-1, 0, 0, 0, 0, 0, 0, 0], "exceptional divisor"),
            t(1, &[1, 1, 1, 1, 0, 0, 0, 0], "hyperplane through four points"),
            t(2, &[2, 2, 1, 1, 1, 1, 1, 0], "quadric cone, join of a quartic curve and a line"),
            t(3, &[2, 2, 2, 2, 2, 2, 2, 0], "secant variety of a rational normal quartic"),
            t(3, &[3, 2, 2, 2, 2, 1, 1, 1], "cone over the Cayley cubic surface"),
            t(4, &[3, 3, 3, 3, 2, 2, 2, 1], "quartic with four triple points"),
            t(4, &[4, 3, 2, 2, 2, 2, 2, 2], "cone over a quartic surface"),
            t(5, &[4, 4, 3, 3, 3, 3, 2, 2], "quintic"),
            t(6, &[5, 4, 4, 4, 3, 3, 3, 3], "sextic with a quintuple point"),
            t(6, &[4, 4, 4, 4, 4, 4, 3, 2], "sextic with six quadruple points"),
            t(7, &[5, 5, 5, 4, 4, 4, 4, 3], "septic with three quintuple points"),
            t(7, &[6, 4, 4, 4, 4, 4, 4, 4], "septic with a sextuple point"),
            t(8, &[6, 5, 5, 5, 5, 5, 4, 4], "octic"),
            t(9, &[6, 6, 6, 6, 5, 5, 5, 5], "nonic"),
            t(10, &[7, 6, 6, 6, 6, 6, 6, 6], "decic"),
        ]),
        _ => None,
    }
}

/// Positions `0..s` sorted by multiplicity descending, ties by position.
fn descending_positions(m: &[i64]) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..m.len()).collect();
    pos.sort_by_key(|&k| (Reverse(m[k]), k));
    pos
}

/// Permutation `p` with `rep.permuted(p) == target`, assuming equal keys.
fn permutation_to(rep: &[i64], target: &[i64]) -> Vec<usize> {
    let from = descending_positions(rep);
    let to = descending_positions(target);
    let mut perm = vec![0; rep.len()];
    for (&a, &b) in from.iter().zip(&to) {
        perm[a] = b + 1;
    }
    perm
}

/// One permutation type of Weyl divisors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylDivisorType {
    pub id: usize,
    pub representative: DivisorClass,
    pub count: usize,
    pub description: String,
}

/// Type of a catalog member and the point permutation carrying the type
/// representative onto it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeLabel {
    pub type_id: usize,
    pub permutation: Vec<usize>,
}

/// The Weyl orbit of the exceptional divisors.
#[derive(Debug, Clone)]
pub struct WeylDivisorCatalog {
    n: usize,
    s: usize,
    classes: Vec<DivisorClass>,
    labels: Vec<TypeLabel>,
    types: Vec<WeylDivisorType>,
    lookup: HashMap<DivisorClass, usize>,
}

/// BFS closure of `{E_1, .., E_s}` with the default size cap.
pub fn weyl_divisor_orbit(n: usize, s: usize) -> Result<WeylDivisorCatalog> {
    weyl_divisor_orbit_capped(n, s, DEFAULT_ORBIT_CAP)
}

pub fn weyl_divisor_orbit_capped(n: usize, s: usize, cap: usize) -> Result<WeylDivisorCatalog> {
    let seeds = (1..=s)
        .map(|i| DivisorClass::exceptional(n, s, i))
        .collect::<Result<Vec<_>>>()?;
    let sets = cremona_sets(n, s);
    let classes = orbit_closure(seeds, &sets, cap, n, s, |d, set| {
        cremona_divisor(d, set).expect("set size fixed")
    })?;
    WeylDivisorCatalog::from_classes(n, s, classes)
}

impl WeylDivisorCatalog {
    /// Builds a labelled catalog from an already enumerated orbit, checking
    /// that it is closed under every Cremona transformation.
    pub fn from_classes(n: usize, s: usize, classes: Vec<DivisorClass>) -> Result<Self> {
        for c in &classes {
            if c.n() != n || c.s() != s {
                return Err(Error::IncompatibleAmbient { n1: n, s1: s, n2: c.n(), s2: c.s() });
            }
        }
        let members: HashSet<&DivisorClass> = classes.iter().collect();
        if members.len() != classes.len() {
            return Err(Error::InvalidAmbient("catalog contains duplicate classes".into()));
        }
        let sets = cremona_sets(n, s);
        for c in &classes {
            for set in &sets {
                if !members.contains(&cremona_divisor(c, set)?) {
                    return Err(Error::InvalidAmbient(format!(
                        "catalog is not closed under Cremona: {c} at {set}"
                    )));
                }
            }
        }

        let mut keys: Vec<(i64, Vec<i64>)> =
            classes.iter().map(|c| c.canonical_key()).unique().collect();
        let reps: Vec<(i64, Vec<i64>, String)> = match known_types(n, s) {
            Some(known) => {
                let known_keys: HashSet<(i64, Vec<i64>)> = known
                    .iter()
                    .map(|(d, m, _)| DivisorClass::new(n, *d, m.clone()).map(|c| c.canonical_key()))
                    .collect::<Result<_>>()?;
                if keys.iter().any(|k| !known_keys.contains(k)) {
                    return Err(Error::InvalidAmbient(
                        "catalog has a class outside the known type list".into(),
                    ));
                }
                known.into_iter().map(|(d, m, what)| (d, m, what.to_string())).collect()
            }
            None => {
                keys.sort();
                keys.iter()
                    .map(|(d, m)| {
                        // representative: negative entries last, as E_1 style
                        let mut rep = m.clone();
                        if rep.iter().all(|&x| x <= 0) {
                            rep.sort();
                        }
                        (*d, rep, String::new())
                    })
                    .collect()
            }
        };
        let mut type_of_key: HashMap<(i64, Vec<i64>), usize> = HashMap::new();
        let mut types = Vec::new();
        for (id0, (d, m, description)) in reps.into_iter().enumerate() {
            let representative = DivisorClass::new(n, d, m)?;
            type_of_key.insert(representative.canonical_key(), id0);
            types.push(WeylDivisorType { id: id0 + 1, representative, count: 0, description });
        }

        let mut labelled: Vec<(DivisorClass, TypeLabel)> = classes
            .into_iter()
            .map(|c| {
                let t = type_of_key[&c.canonical_key()];
                let permutation = permutation_to(types[t].representative.m(), c.m());
                (c, TypeLabel { type_id: t + 1, permutation })
            })
            .collect();
        labelled.sort_by(|(a, la), (b, lb)| {
            (la.type_id, Reverse(a.m())).cmp(&(lb.type_id, Reverse(b.m())))
        });
        for (_, label) in &labelled {
            types[label.type_id - 1].count += 1;
        }
        let (classes, labels): (Vec<_>, Vec<_>) = labelled.into_iter().unzip();
        let lookup = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(WeylDivisorCatalog { n, s, classes, labels, types, lookup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn labels(&self) -> &[TypeLabel] {
        &self.labels
    }

    pub fn types(&self) -> &[WeylDivisorType] {
        &self.types
    }

    pub fn contains(&self, class: &DivisorClass) -> bool {
        self.lookup.contains_key(class)
    }

    pub fn position(&self, class: &DivisorClass) -> Option<usize> {
        self.lookup.get(class).copied()
    }

    /// Type and permutation of a catalog member.
    pub fn classify(&self, class: &DivisorClass) -> Result<&TypeLabel> {
        self.position(class)
            .map(|i| &self.labels[i])
            .ok_or_else(|| Error::NotAWeylDivisor(class.to_string()))
    }
}

/// `⟨D,D⟩ = -1` and `⟨D,-K⟩ = n-1`.
pub fn is_minus_one_class(class: &DivisorClass) -> bool {
    let k = anticanonical(class.n(), class.s()).expect("ambient already valid");
    dm_pairing(class, class) == Ok(-1) && dm_pairing(class, &k) == Ok(class.n() as i64 - 1)
}

/// What a Weyl curve looks like up to permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveSpecies {
    /// `h - e_i - e_j`
    Line,
    /// `3h - Σ e_i + e_j` on `X^3_7`
    TwistedCubic,
    /// `4h - Σ_{i≠j} e_i` on `X^4_8`
    RationalNormalQuartic,
    Other,
}

fn curve_species(c: &CurveClass) -> CurveSpecies {
    let ones = c.mu().iter().filter(|&&x| x == 1).count();
    let zeros = c.mu().iter().filter(|&&x| x == 0).count();
    let s = c.s();
    match c.delta() {
        1 if ones == 2 && zeros == s - 2 => CurveSpecies::Line,
        d if d == c.n() as i64 && s == c.n() + 4 && ones == s - 1 && zeros == 1 => {
            match c.n() {
                3 => CurveSpecies::TwistedCubic,
                _ => CurveSpecies::RationalNormalQuartic,
            }
        }
        _ => CurveSpecies::Other,
    }
}

/// The Weyl orbit of the lines through two points.
#[derive(Debug, Clone)]
pub struct WeylCurveCatalog {
    n: usize,
    s: usize,
    classes: Vec<CurveClass>,
    lookup: HashMap<CurveClass, usize>,
}

/// Weyl curves: the positive-degree members of the orbit of `{h - e_i - e_j}`
/// under the curve Cremona action.
///
/// A curve inside the indeterminacy locus of `Cr_J` (a line through two of
/// its points) is sent to minus an effective class, so the linear orbit is
/// symmetric under sign. On `X^4_8` the negative half consists of minus the
/// characteristic cycles of the Weyl surfaces: lines and planes through
/// complementary points of `J` are exchanged.
pub fn weyl_curve_orbit(n: usize, s: usize) -> Result<WeylCurveCatalog> {
    let mut seeds = Vec::new();
    for (i, j) in (1..=s).tuple_combinations() {
        seeds.push(CurveClass::line_through(n, s, i, j)?);
    }
    let mut classes: Vec<CurveClass> =
        curve_orbit(n, s, seeds)?.into_iter().filter(|c| c.delta() > 0).collect();
    classes.sort_by_key(|c| (c.delta(), Reverse(c.mu().to_vec())));
    let lookup = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(WeylCurveCatalog { n, s, classes, lookup })
}

fn curve_orbit(n: usize, s: usize, seeds: Vec<CurveClass>) -> Result<Vec<CurveClass>> {
    if !(3..=4).contains(&n) {
        return Err(Error::Unsupported(format!(
            "curve orbits are only available for n = 3, 4 (got n = {n})"
        )));
    }
    let sets = cremona_sets(n, s);
    orbit_closure(seeds, &sets, DEFAULT_ORBIT_CAP, n, s, |c, set| {
        cremona_curve(c, set).expect("n and set size checked")
    })
}

impl WeylCurveCatalog {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CurveClass] {
        &self.classes
    }

    pub fn contains(&self, class: &CurveClass) -> bool {
        self.lookup.contains_key(class)
    }

    pub fn species(&self, class: &CurveClass) -> CurveSpecies {
        curve_species(class)
    }

    /// `Cr_J` applied to a member, with the sign fixed: returns the image
    /// class when it is effective, otherwise minus it together with `true`.
    pub fn image(&self, class: &CurveClass, set: &IndexSet) -> Result<(CurveClass, bool)> {
        let image = cremona_curve(class, set)?;
        Ok(if image.delta() < 0 { (image.neg(), true) } else { (image, false) })
    }
}

/// The Weyl orbit of the moving line class `h - e_i`.
pub fn moving_curve_orbit(n: usize, s: usize) -> Result<Vec<CurveClass>> {
    let seeds = (1..=s)
        .map(|i| CurveClass::through(n, s, 1, &IndexSet::from_slice(&[i])?))
        .collect::<Result<Vec<_>>>()?;
    let mut classes = curve_orbit(n, s, seeds)?;
    classes.sort_by_key(|c| (c.delta(), Reverse(c.mu().to_vec())));
    Ok(classes)
}

/// The five kinds of Weyl surface on `X^4_8`, named by degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// plane `L_abc`
    S1,
    /// cubic cone over `C_ĵ` with vertex `p_i`
    S3,
    /// sextic with five triple points
    S6,
    /// degree 10 with two sextuple points
    S10,
    /// degree 15 with one triple point
    S15,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 5] =
        [SurfaceKind::S1, SurfaceKind::S3, SurfaceKind::S6, SurfaceKind::S10, SurfaceKind::S15];

    pub fn degree(self) -> i64 {
        match self {
            SurfaceKind::S1 => 1,
            SurfaceKind::S3 => 3,
            SurfaceKind::S6 => 6,
            SurfaceKind::S10 => 10,
            SurfaceKind::S15 => 15,
        }
    }

    fn arity(self) -> usize {
        match self {
            SurfaceKind::S1 | SurfaceKind::S6 => 3,
            SurfaceKind::S3 | SurfaceKind::S10 => 2,
            SurfaceKind::S15 => 1,
        }
    }

    /// Functional `(c_0; c_1..c_8)` with `k_S(D) = max{0, Σ c_i m_i - c_0 d}`.
    fn char_cycle(self, indices: &[usize]) -> CurveClass {
        let inside = |i: usize| indices.contains(&i);
        let (delta, mu): (i64, Vec<i64>) = match self {
            SurfaceKind::S1 => (2, (1..=8).map(|i| i64::from(inside(i))).collect()),
            SurfaceKind::S3 => (
                5,
                (1..=8)
                    .map(|i| match i {
                        _ if i == indices[0] => 2,
                        _ if i == indices[1] => 0,
                        _ => 1,
                    })
                    .collect(),
            ),
            SurfaceKind::S6 => (8, (1..=8).map(|i| if inside(i) { 1 } else { 2 }).collect()),
            SurfaceKind::S10 => (11, (1..=8).map(|i| if inside(i) { 3 } else { 2 }).collect()),
            SurfaceKind::S15 => (14, (1..=8).map(|i| if inside(i) { 2 } else { 3 }).collect()),
        };
        CurveClass::new(4, delta, mu).expect("n = 4")
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.degree())
    }
}

/// A Weyl surface of `X^4_8`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylSurface {
    pub kind: SurfaceKind,
    /// Three points for `S1`/`S6`, `(i, ĵ)` for `S3`, two for `S10`, one for `S15`.
    pub indices: Vec<usize>,
    pub char_cycle: CurveClass,
    pub chow_class: TwoCycleClass,
}

impl WeylSurface {
    pub fn new(kind: SurfaceKind, indices: Vec<usize>) -> Result<Self> {
        let bad = || Error::InvalidIndexSet(format!("{kind} does not take indices {indices:?}"));
        if indices.len() != kind.arity() || indices.iter().any(|&i| !(1..=8).contains(&i)) {
            return Err(bad());
        }
        match kind {
            SurfaceKind::S3 if indices[0] == indices[1] => return Err(bad()),
            SurfaceKind::S3 | SurfaceKind::S15 => {}
            _ if !indices.windows(2).all(|w| w[0] < w[1]) => return Err(bad()),
            _ => {}
        }
        let char_cycle = kind.char_cycle(&indices);
        let chow_class = TwoCycleClass::of_surface(kind, &indices);
        Ok(WeylSurface { kind, indices, char_cycle, chow_class })
    }

    /// Label such as `S1{1,4,5}` or `S3{1,^8}`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = match self.kind {
            SurfaceKind::S3 => vec![self.indices[0].to_string(), format!("^{}", self.indices[1])],
            _ => self.indices.iter().map(|i| i.to_string()).collect(),
        };
        format!("{}{{{}}}", self.kind, parts.join(","))
    }
}

impl FromStr for WeylSurface {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad surface label {text:?}"));
        let (head, rest) = text.trim().split_once('{').ok_or_else(bad)?;
        let body = rest.strip_suffix('}').ok_or_else(bad)?;
        let kind = SurfaceKind::ALL
            .into_iter()
            .find(|k| k.to_string() == head)
            .ok_or_else(bad)?;
        let indices = body
            .split(',')
            .map(|p| p.trim().trim_start_matches('^').parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        WeylSurface::new(kind, indices)
    }
}

/// All 204 Weyl surfaces of `X^4_8`: 56 `S1`, 56 `S3`, 56 `S6`, 28 `S10`, 8 `S15`.
pub fn weyl_surface_catalog() -> Vec<WeylSurface> {
    let mut out = Vec::with_capacity(204);
    let make = |kind, idx: Vec<usize>| WeylSurface::new(kind, idx).expect("valid indices");
    for t in (1..=8).combinations(3) {
        out.push(make(SurfaceKind::S1, t));
    }
    for (i, j) in (1..=8).cartesian_product(1..=8).filter(|(i, j)| i != j) {
        out.push(make(SurfaceKind::S3, vec![i, j]));
    }
    for t in (1..=8).combinations(3) {
        out.push(make(SurfaceKind::S6, t));
    }
    for t in (1..=8).combinations(2) {
        out.push(make(SurfaceKind::S10, t));
    }
    for i in 1..=8 {
        out.push(make(SurfaceKind::S15, vec![i]));
    }
    out
}

/// Where a Cremona transformation sends a Weyl surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceImage {
    Surface(usize),
    /// The surface lies in the indeterminacy locus and is contracted onto
    /// the Weyl curve; its functional becomes minus that curve.
    Contracted(CurveClass),
}

/// Catalogs, generator cone and caches for one of the ambients `X^3_7`,
/// `X^4_8`.
pub struct WeylSpace {
    n: usize,
    s: usize,
    divisors: WeylDivisorCatalog,
    curves: WeylCurveCatalog,
    moving: Vec<CurveClass>,
    surfaces: Vec<WeylSurface>,
    pencils: Vec<(CurveClass, CurveClass)>,
    surface_lookup: HashMap<CurveClass, usize>,
    cone: GeneratorCone,
    membership: Mutex<HashMap<(i64, Vec<i64>), bool>>,
}

impl fmt::Debug for WeylSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylSpace")
            .field("n", &self.n)
            .field("s", &self.s)
            .field("divisors", &self.divisors.len())
            .field("curves", &self.curves.len())
            .field("moving", &self.moving.len())
            .field("surfaces", &self.surfaces.len())
            .finish()
    }
}

static SPACE_3_7: OnceLock<WeylSpace> = OnceLock::new();
static SPACE_4_8: OnceLock<WeylSpace> = OnceLock::new();

impl WeylSpace {
    /// Process-wide instance, built on first use.
    pub fn shared(n: usize, s: usize) -> Result<&'static WeylSpace> {
        let cell = match (n, s) {
            (3, 7) => &SPACE_3_7,
            (4, 8) => &SPACE_4_8,
            _ => return Err(Error::CatalogUnavailable { n, s }),
        };
        if let Some(space) = cell.get() {
            return Ok(space);
        }
        let space = WeylSpace::build(n, s)?;
        Ok(cell.get_or_init(|| space))
    }

    /// Installs a catalog (for instance one loaded from disk) as the shared
    /// instance. Returns false if the shared instance already exists.
    pub fn install(divisors: WeylDivisorCatalog) -> Result<bool> {
        let (n, s) = (divisors.n(), divisors.s());
        let cell = match (n, s) {
            (3, 7) => &SPACE_3_7,
            (4, 8) => &SPACE_4_8,
            _ => return Err(Error::CatalogUnavailable { n, s }),
        };
        if cell.get().is_some() {
            return Ok(false);
        }
        let space = WeylSpace::with_catalog(divisors)?;
        Ok(cell.set(space).is_ok())
    }

    pub fn build(n: usize, s: usize) -> Result<WeylSpace> {
        if !matches!((n, s), (3, 7) | (4, 8)) {
            return Err(Error::CatalogUnavailable { n, s });
        }
        WeylSpace::with_catalog(weyl_divisor_orbit(n, s)?)
    }

    pub fn with_catalog(divisors: WeylDivisorCatalog) -> Result<WeylSpace> {
        let (n, s) = (divisors.n(), divisors.s());
        if !matches!((n, s), (3, 7) | (4, 8)) {
            return Err(Error::CatalogUnavailable { n, s });
        }
        let curves = weyl_curve_orbit(n, s)?;
        let moving = moving_curve_orbit(n, s)?;
        let surfaces = if n == 4 { weyl_surface_catalog() } else { Vec::new() };
        let moving_set: HashSet<&CurveClass> = moving.iter().collect();
        let pencils = surfaces
            .iter()
            .map(|surface| {
                curves
                    .classes()
                    .iter()
                    .find_map(|base| {
                        let pencil = surface.char_cycle.add(&base.neg()).ok()?;
                        moving_set.contains(&pencil).then(|| (base.clone(), pencil))
                    })
                    .ok_or_else(|| {
                        Error::InvalidAmbient(format!("no sweeping pencil for {}", surface.label()))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let surface_lookup = surfaces
            .iter()
            .enumerate()
            .map(|(i, surface)| (surface.char_cycle.clone(), i))
            .collect();
        let cone = GeneratorCone::new(s + 1, divisors.classes().iter().map(|c| c.coords()).collect());
        Ok(WeylSpace {
            n,
            s,
            divisors,
            curves,
            moving,
            surfaces,
            pencils,
            surface_lookup,
            cone,
            membership: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn divisors(&self) -> &WeylDivisorCatalog {
        &self.divisors
    }

    pub fn curves(&self) -> &WeylCurveCatalog {
        &self.curves
    }

    /// The orbit of `h - e_i`.
    pub fn moving_curves(&self) -> &[CurveClass] {
        &self.moving
    }

    /// Empty for `n = 3`.
    pub fn surfaces(&self) -> &[WeylSurface] {
        &self.surfaces
    }

    /// `(base Weyl curve, pencil class)` with `char_cycle = base + pencil`.
    pub fn pencil(&self, surface: usize) -> (&CurveClass, &CurveClass) {
        let (base, pencil) = &self.pencils[surface];
        (base, pencil)
    }

    pub fn surface_index(&self, surface: &WeylSurface) -> Option<usize> {
        self.surface_lookup.get(&surface.char_cycle).copied()
    }

    pub fn cone(&self) -> &GeneratorCone {
        &self.cone
    }

    /// Image of a surface under `Cr_I`, computed on its characteristic cycle.
    pub fn cremona_surface(&self, surface: usize, set: &IndexSet) -> Result<SurfaceImage> {
        let image = cremona_curve(&self.surfaces[surface].char_cycle, set)?;
        if let Some(&i) = self.surface_lookup.get(&image) {
            return Ok(SurfaceImage::Surface(i));
        }
        let contracted = image.neg();
        if self.curves.contains(&contracted) {
            return Ok(SurfaceImage::Contracted(contracted));
        }
        Err(Error::InvalidAmbient(format!(
            "image of {} under Cr{set} is neither a Weyl surface nor a contracted curve",
            self.surfaces[surface].label()
        )))
    }

    /// Moving curves `C` of the orbit of `h - e_i` with `D·C = 0`.
    pub fn orthogonal_moving_curves(&self, divisor: &DivisorClass) -> Result<Vec<CurveClass>> {
        if !self.divisors.contains(divisor) {
            return Err(Error::NotAWeylDivisor(divisor.to_string()));
        }
        Ok(self
            .moving
            .iter()
            .filter(|c| intersect_div_curve(divisor, c) == Ok(0))
            .cloned()
            .collect())
    }

    /// Exact membership in the cone spanned by the Weyl divisors. The cone is
    /// invariant under permuting the points, so answers are cached by
    /// canonical key.
    pub fn in_effective_cone(&self, divisor: &DivisorClass) -> Result<bool> {
        if divisor.n() != self.n || divisor.s() != self.s {
            return Err(Error::IncompatibleAmbient {
                n1: self.n,
                s1: self.s,
                n2: divisor.n(),
                s2: divisor.s(),
            });
        }
        let key = divisor.canonical_key();
        if let Some(&known) = self.membership.lock().expect("cache lock").get(&key) {
            return Ok(known);
        }
        let target: Vec<i64> = std::iter::once(key.0).chain(key.1.iter().copied()).collect();
        let answer = self.cone.contains(&target);
        self.membership.lock().expect("cache lock").insert(key, answer);
        Ok(answer)
    }
}

/// Convenience wrapper over the shared space.
pub fn orthogonal_moving_curves(divisor: &DivisorClass) -> Result<Vec<CurveClass>> {
    WeylSpace::shared(divisor.n(), divisor.s())?.orthogonal_moving_curves(divisor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn div(n: usize, d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(n, d, m.to_vec()).unwrap()
    }

    fn curve(delta: i64, mu: &[i64]) -> CurveClass {
        CurveClass::new(4, delta, mu.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::from_slice(v).unwrap()
    }

    #[test]
    fn small_orbits() {
        let cat = weyl_divisor_orbit(4, 5).unwrap();
        assert_eq!(cat.len(), 10);
        assert_eq!(cat.types().len(), 2);
        // lines on a cubic surface
        assert_eq!(weyl_divisor_orbit(2, 6).unwrap().len(), 27);
        assert_eq!(weyl_divisor_orbit(2, 3).unwrap().len(), 6);
        // fewer points than a Cremona needs: only the exceptional divisors
        assert_eq!(weyl_divisor_orbit(4, 3).unwrap().len(), 3);
    }

    #[test]
    fn infinite_orbit_hits_the_cap() {
        let err = weyl_divisor_orbit_capped(3, 8, 5000).unwrap_err();
        assert_eq!(err, Error::OrbitUnbounded { n: 3, s: 8, cap: 5000 });
        assert!(weyl_divisor_orbit_capped(2, 9, 5000).is_err());
    }

    #[test]
    fn type_labels_reproduce_members() {
        for (n, s) in [(3, 7), (4, 8), (2, 6)] {
            let cat = weyl_divisor_orbit(n, s).unwrap();
            for (c, label) in cat.classes().iter().zip(cat.labels()) {
                let rep = &cat.types()[label.type_id - 1].representative;
                assert_eq!(&rep.permuted(&label.permutation), c);
            }
            let total: usize = cat.types().iter().map(|t| t.count).sum();
            assert_eq!(total, cat.len());
        }
    }

    #[test]
    fn classify_examples() {
        let cat = weyl_divisor_orbit(4, 8).unwrap();
        let d = div(4, 3, &[2, 2, 2, 2, 2, 2, 2, 0]);
        assert_eq!(cat.classify(&d).unwrap().type_id, 4);
        let d = div(4, 3, &[2, 2, 0, 2, 2, 2, 2, 2]);
        let label = cat.classify(&d).unwrap();
        assert_eq!(label.type_id, 4);
        assert_eq!(cat.types()[3].representative.permuted(&label.permutation), d);

        let cat3 = weyl_divisor_orbit(3, 7).unwrap();
        assert_eq!(cat3.classify(&div(3, 2, &[2, 1, 1, 1, 1, 1, 0])).unwrap().type_id, 3);
        assert!(matches!(
            cat3.classify(&div(3, 2, &[0; 7])),
            Err(Error::NotAWeylDivisor(_))
        ));
    }

    #[test]
    fn from_classes_rejects_open_sets() {
        let cat = weyl_divisor_orbit(3, 7).unwrap();
        let mut classes = cat.classes().to_vec();
        classes.pop();
        assert!(WeylDivisorCatalog::from_classes(3, 7, classes).is_err());
        let again = WeylDivisorCatalog::from_classes(3, 7, cat.classes().to_vec()).unwrap();
        assert_eq!(again.classes(), cat.classes());
        assert_eq!(again.labels(), cat.labels());
    }

    #[test]
    fn minus_one_classes() {
        assert!(is_minus_one_class(&DivisorClass::exceptional(4, 8, 1).unwrap()));
        assert!(is_minus_one_class(&div(4, 6, &[4, 4, 4, 4, 4, 4, 3, 2])));
        assert!(!is_minus_one_class(&div(4, 1, &[0; 8])));
    }

    #[test]
    fn curve_orbits() {
        let c3 = weyl_curve_orbit(3, 7).unwrap();
        assert_eq!(c3.len(), 28);
        let cubics = c3.classes().iter().filter(|c| c3.species(c) == CurveSpecies::TwistedCubic);
        assert_eq!(cubics.count(), 7);
        let c4 = weyl_curve_orbit(4, 8).unwrap();
        assert_eq!(c4.len(), 36);
        let quartics: Vec<_> = c4
            .classes()
            .iter()
            .filter(|c| c4.species(c) == CurveSpecies::RationalNormalQuartic)
            .collect();
        assert_eq!(quartics.len(), 8);
        assert!(c4.contains(&curve(4, &[1, 1, 1, 1, 1, 1, 1, 0])));
        assert!(matches!(weyl_curve_orbit(2, 5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn surface_catalog_shape() {
        let surfaces = weyl_surface_catalog();
        assert_eq!(surfaces.len(), 204);
        let count = |k| surfaces.iter().filter(|s| s.kind == k).count();
        assert_eq!(
            SurfaceKind::ALL.map(count),
            [56, 56, 56, 28, 8]
        );
        let distinct: HashSet<_> = surfaces.iter().map(|s| s.char_cycle.clone()).collect();
        assert_eq!(distinct.len(), 204);
        let s1 = WeylSurface::new(SurfaceKind::S1, vec![1, 4, 5]).unwrap();
        assert_eq!(s1.char_cycle, curve(2, &[1, 0, 0, 1, 1, 0, 0, 0]));
        let s15 = WeylSurface::new(SurfaceKind::S15, vec![8]).unwrap();
        assert_eq!(s15.char_cycle, curve(14, &[3, 3, 3, 3, 3, 3, 3, 2]));
    }

    #[test]
    fn surface_labels_round_trip() {
        for s in weyl_surface_catalog() {
            assert_eq!(s.label().parse::<WeylSurface>().unwrap(), s);
        }
        assert_eq!(
            WeylSurface::new(SurfaceKind::S3, vec![2, 4]).unwrap().label(),
            "S3{2,^4}"
        );
        assert!("S2{1,2,3}".parse::<WeylSurface>().is_err());
        assert!(WeylSurface::new(SurfaceKind::S1, vec![3, 2, 1]).is_err());
        assert!(WeylSurface::new(SurfaceKind::S3, vec![2, 2]).is_err());
    }

    #[test]
    fn planes_fixed_by_cremona_through_two_of_their_points() {
        let space = WeylSpace::shared(4, 8).unwrap();
        for (idx, surface) in space.surfaces().iter().enumerate() {
            if surface.kind != SurfaceKind::S1 {
                continue;
            }
            for i in index_sets(8, 5) {
                let common = surface.indices.iter().filter(|&&k| i.contains(k)).count();
                if common == 2 {
                    assert_eq!(space.cremona_surface(idx, &i).unwrap(), SurfaceImage::Surface(idx));
                }
            }
        }
    }

    #[test]
    fn chain_from_plane_to_degree_fifteen() {
        let space = WeylSpace::shared(4, 8).unwrap();
        let find = |label: &str| space.surface_index(&label.parse().unwrap()).unwrap();
        let steps = [
            ("S1{1,4,5}", &[1, 2, 3, 6, 7], "S3{1,^8}"),
            ("S3{1,^8}", &[2, 3, 4, 5, 8], "S6{6,7,8}"),
            ("S6{6,7,8}", &[1, 2, 6, 7, 8], "S10{1,2}"),
            ("S10{1,2}", &[3, 4, 5, 6, 7], "S15{8}"),
        ];
        for (from, j, to) in steps {
            assert_eq!(
                space.cremona_surface(find(from), &set(j)).unwrap(),
                SurfaceImage::Surface(find(to)),
                "{from} -> {to}"
            );
        }
    }

    #[test]
    fn surface_images_are_surfaces_or_contracted_curves() {
        let space = WeylSpace::shared(4, 8).unwrap();
        let sets = index_sets(8, 5);
        let mut contracted = 0;
        for idx in 0..space.surfaces().len() {
            for i in &sets {
                if let SurfaceImage::Contracted(_) = space.cremona_surface(idx, i).unwrap() {
                    contracted += 1;
                }
            }
        }
        assert!(contracted > 0);
        // the plane L_123 lies in the indeterminacy locus of Cr_12345
        let plane = space.surface_index(&"S1{1,2,3}".parse().unwrap()).unwrap();
        assert_eq!(
            space.cremona_surface(plane, &set(&[1, 2, 3, 4, 5])).unwrap(),
            SurfaceImage::Contracted(CurveClass::line_through(4, 8, 4, 5).unwrap())
        );
    }

    #[test]
    fn pencils_are_weyl_curve_plus_moving_class() {
        let space = WeylSpace::shared(4, 8).unwrap();
        for (idx, surface) in space.surfaces().iter().enumerate() {
            let (base, pencil) = space.pencil(idx);
            assert!(space.curves().contains(base));
            assert!(space.moving_curves().contains(pencil));
            assert_eq!(base.add(pencil).unwrap(), surface.char_cycle);
        }
    }

    #[test]
    fn moving_orbit_contains_the_six_families() {
        let space = WeylSpace::shared(4, 8).unwrap();
        for c in [
            curve(1, &[1, 0, 0, 0, 0, 0, 0, 0]),
            curve(4, &[1, 1, 1, 1, 1, 1, 0, 0]),
            curve(7, &[2, 2, 2, 1, 1, 1, 1, 1]),
            curve(10, &[1, 3, 2, 2, 2, 2, 2, 2]),
            curve(13, &[2, 2, 2, 3, 3, 3, 3, 3]),
            curve(16, &[4, 4, 3, 3, 3, 3, 3, 3]),
        ] {
            assert!(space.moving_curves().contains(&c), "{c}");
        }
    }

    #[test]
    fn orthogonal_moving_curves_examples() {
        let d = div(3, 1, &[1, 1, 1, 0, 0, 0, 0]);
        let found = orthogonal_moving_curves(&d).unwrap();
        let lines_through_p3 = CurveClass::new(3, 1, vec![0, 0, 1, 0, 0, 0, 0]).unwrap();
        assert!(found.contains(&lines_through_p3));

        let e1 = DivisorClass::exceptional(4, 8, 1).unwrap();
        let found = orthogonal_moving_curves(&e1).unwrap();
        assert!(found.contains(&curve(1, &[0, 1, 0, 0, 0, 0, 0, 0])));
        assert!(found.iter().all(|c| c.mult(1) == 0));

        assert!(matches!(
            orthogonal_moving_curves(&div(4, 2, &[0; 8])),
            Err(Error::NotAWeylDivisor(_))
        ));
    }

    #[test]
    fn cone_membership_examples() {
        let space = WeylSpace::shared(4, 8).unwrap();
        assert!(space.in_effective_cone(&anticanonical(4, 8).unwrap()).unwrap());
        assert!(!space.in_effective_cone(&div(4, 1, &[1, 1, 1, 1, 1, 0, 0, 0])).unwrap());
        assert!(space.in_effective_cone(&div(4, 2, &[1; 8])).unwrap());
        assert!(matches!(WeylSpace::shared(3, 6), Err(Error::CatalogUnavailable { .. })));
    }
}
