//! Finite groups given by multiplication tables, with exact character tables.

pub mod cyclotomic;

pub use cyclotomic::Cyclotomic;

use crate::error::{Error, Result};
use crate::scalar::Rational;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A finite group as an explicit Cayley table on 0..order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if let Some(i) = mult.iter().position(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(format!("row {i} of the table is not a map into 0..{n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mult[e][g] == g && mult[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| mult[g][h] == identity && mult[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a][b];
                for c in 0..n {
                    if mult[ab][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self { order: n, mult, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> =
                (0..self.order).map(|h| self.mul(self.mul(h, g), self.inv(h))).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub rep: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    /// One value per class, in the table's class order.
    pub values: Vec<Cyclotomic>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub classes: Vec<ClassInfo>,
    pub irreps: Vec<Irrep>,
}

/// Checks every character-table relation exactly; an empty list means valid.
pub fn validate_character_table(t: &CharacterTable, g: &GroupTable) -> Vec<String> {
    let mut diags = Vec::new();
    let order = g.order();
    let actual = g.conjugacy_classes();
    let class_of = class_lookup(&actual, order);

    let mut covered = vec![false; actual.len()];
    for (i, c) in t.classes.iter().enumerate() {
        if c.rep >= order {
            diags.push(format!("class {i}: representative {} is not a group element", c.rep));
            continue;
        }
        let k = class_of[c.rep];
        if actual[k].len() != c.size {
            diags.push(format!(
                "class {i}: size {} but the class of {} has {} elements",
                c.size,
                c.rep,
                actual[k].len()
            ));
        }
        if std::mem::replace(&mut covered[k], true) {
            diags.push(format!("class {i}: representative {} repeats an earlier class", c.rep));
        }
    }
    if t.classes.len() != actual.len() || covered.iter().any(|c| !c) {
        diags.push(format!(
            "table lists {} classes but the group has {}",
            t.classes.len(),
            actual.len()
        ));
    }
    if t.irreps.len() != t.classes.len() {
        diags.push(format!("{} irreps for {} classes", t.irreps.len(), t.classes.len()));
    }
    if let Some((i, r)) = t.irreps.iter().enumerate().find(|(_, r)| r.values.len() != t.classes.len()) {
        diags.push(format!("irrep {i} ({}) has {} values for {} classes", r.label, r.values.len(), t.classes.len()));
        return diags;
    }
    if !diags.is_empty() {
        return diags;
    }

    let id_class = t.classes.iter().position(|c| c.rep == g.identity()).expect("identity class present");
    let dim_sq: usize = t.irreps.iter().map(|r| r.dim * r.dim).sum();
    if dim_sq != order {
        diags.push(format!("Σ dim² = {dim_sq}, expected |G| = {order}"));
    }
    for (i, r) in t.irreps.iter().enumerate() {
        if r.values[id_class] != Cyclotomic::integer(r.dim as i64) {
            diags.push(format!("irrep {i} ({}): χ(e) = {} differs from dim {}", r.label, r.values[id_class], r.dim));
        }
    }
    let target = Cyclotomic::integer(order as i64);
    for (i, ri) in t.irreps.iter().enumerate() {
        for (j, rj) in t.irreps.iter().enumerate().skip(i) {
            let s = t.classes.iter().enumerate().fold(Cyclotomic::zero(), |acc, (k, c)| {
                acc + (&ri.values[k] * &rj.values[k].conj()).scale(&Rational::from_integer(c.size.into()))
            });
            let ok = if i == j { s == target } else { s.is_zero() };
            if !ok {
                diags.push(format!(
                    "row orthogonality fails for irreps {i} ({}) and {j} ({}): sum = {s}",
                    ri.label, rj.label
                ));
            }
        }
    }
    for (a, ca) in t.classes.iter().enumerate() {
        for (b, _) in t.classes.iter().enumerate().skip(a) {
            let s = t.irreps.iter().fold(Cyclotomic::zero(), |acc, r| acc + &r.values[a] * &r.values[b].conj());
            let ok = if a == b {
                s == Cyclotomic::rational(Rational::new(order.into(), ca.size.into()))
            } else {
                s.is_zero()
            };
            if !ok {
                diags.push(format!("column orthogonality fails for classes {a} and {b}: sum = {s}"));
            }
        }
    }
    diags
}

fn class_lookup(classes: &[Vec<usize>], order: usize) -> Vec<usize> {
    let mut class_of = vec![0; order];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    class_of
}

/// A validated group with its character table and per-element character values.
#[derive(Clone, Debug)]
pub struct Group {
    name: String,
    table: GroupTable,
    characters: CharacterTable,
    /// Element → index into `characters.classes`.
    class_of: Vec<usize>,
}

impl Group {
    pub fn new(name: impl Into<String>, table: GroupTable, characters: CharacterTable) -> Result<Self> {
        let diags = validate_character_table(&characters, &table);
        if !diags.is_empty() {
            return Err(Error::InvalidGroup(diags.join("; ")));
        }
        let actual = table.conjugacy_classes();
        let by_actual = class_lookup(&actual, table.order());
        let mut class_of = vec![0; table.order()];
        for (i, c) in characters.classes.iter().enumerate() {
            for &x in &actual[by_actual[c.rep]] {
                class_of[x] = i;
            }
        }
        Ok(Self { name: name.into(), table, characters, class_of })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn characters(&self) -> &CharacterTable {
        &self.characters
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn num_irreps(&self) -> usize {
        self.characters.irreps.len()
    }

    pub fn irrep(&self, zeta: usize) -> &Irrep {
        &self.characters.irreps[zeta]
    }

    pub fn dim(&self, zeta: usize) -> usize {
        self.characters.irreps[zeta].dim
    }

    pub fn labels(&self) -> Vec<String> {
        self.characters.irreps.iter().map(|r| r.label.clone()).collect()
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.characters.irreps.iter().position(|r| r.label == label)
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// χ_ζ(g).
    pub fn character(&self, zeta: usize, g: usize) -> &Cyclotomic {
        &self.characters.irreps[zeta].values[self.class_of[g]]
    }

    /// (dim ζ)²/|G|: the identity coefficient of the central projection p_ζ.
    pub fn plancherel_weight(&self, zeta: usize) -> Rational {
        let d = self.dim(zeta);
        Rational::new((d * d).into(), self.order().into())
    }

    /// Coefficient of g in p_ζ = (dim ζ/|G|) Σ_g conj χ_ζ(g) g.
    pub fn projection_coefficient(&self, zeta: usize, g: usize) -> Cyclotomic {
        self.character(zeta, g)
            .conj()
            .scale(&Rational::new(self.dim(zeta).into(), self.order().into()))
    }

    /// Multiplicities of each ζ in a representation with the given character
    /// (one value per element).
    pub fn decompose_character(&self, chi: &[Cyclotomic]) -> Result<Vec<Rational>> {
        if chi.len() != self.order() {
            return Err(Error::SizeMismatch { left: chi.len(), right: self.order() });
        }
        (0..self.num_irreps())
            .map(|z| {
                let s = (0..self.order()).fold(Cyclotomic::zero(), |acc, g| acc + &chi[g] * &self.character(z, g).conj());
                s.scale(&Rational::new(1.into(), self.order().into()))
                    .to_rational()
                    .ok_or_else(|| Error::InvalidInput(format!("multiplicity of {} is not rational", self.irrep(z).label)))
            })
            .collect()
    }

    /// Multiplicities m_ζ = dim ζ of the left-regular representation.
    pub fn regular_multiplicities(&self) -> Vec<usize> {
        (0..self.num_irreps()).map(|z| self.dim(z)).collect()
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            name: Some(self.name.clone()),
            order: self.order(),
            mult: self.table.mult.clone(),
            character_table: TableSpec {
                classes: self.characters.classes.clone(),
                irreps: self
                    .characters
                    .irreps
                    .iter()
                    .map(|r| IrrepSpec {
                        label: Some(r.label.clone()),
                        dim: r.dim,
                        values: r
                            .values
                            .iter()
                            .map(|v| {
                                v.to_literal()
                                    .into_iter()
                                    .map(|(o, k, c)| CyclotomicTerm(o, k as i64, c.to_integer().try_into().unwrap_or(0)))
                                    .collect()
                            })
                            .collect(),
                    })
                    .collect(),
            },
        }
    }
}

/// One term (root order, exponent, integer coefficient) of a cyclotomic literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicTerm(pub usize, pub i64, pub i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    pub values: Vec<Vec<CyclotomicTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub classes: Vec<ClassInfo>,
    pub irreps: Vec<IrrepSpec>,
}

/// JSON form of a group and its character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    pub character_table: TableSpec,
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        if self.mult.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but the table has {} rows",
                self.order,
                self.mult.len()
            )));
        }
        let table = GroupTable::new(self.mult.clone())?;
        let irreps = self
            .character_table
            .irreps
            .iter()
            .enumerate()
            .map(|(i, r)| Irrep {
                label: r.label.clone().unwrap_or_else(|| format!("chi{i}")),
                dim: r.dim,
                values: r
                    .values
                    .iter()
                    .map(|terms| {
                        let t: Vec<_> = terms
                            .iter()
                            .map(|CyclotomicTerm(o, k, c)| (*o, *k, Rational::from_integer((*c).into())))
                            .collect();
                        Cyclotomic::from_literal(&t)
                    })
                    .collect(),
            })
            .collect();
        let characters = CharacterTable { classes: self.character_table.classes.clone(), irreps };
        let name = self.name.clone().unwrap_or_else(|| format!("group of order {}", self.order));
        Group::new(name, table, characters)
    }
}

pub fn group_from_json(text: &str) -> Result<Group> {
    let spec: GroupSpec = serde_json::from_str(text)?;
    spec.build()
}

/// Builds a character table by evaluating `value(ζ, rep)` on every class.
fn tabulate(
    table: &GroupTable,
    labels: Vec<(String, usize)>,
    value: impl Fn(usize, usize) -> Cyclotomic,
) -> CharacterTable {
    let classes: Vec<ClassInfo> = table
        .conjugacy_classes()
        .into_iter()
        .map(|c| ClassInfo { rep: c[0], size: c.len() })
        .collect();
    let irreps = labels
        .into_iter()
        .enumerate()
        .map(|(z, (label, dim))| Irrep { label, dim, values: classes.iter().map(|c| value(z, c.rep)).collect() })
        .collect();
    CharacterTable { classes, irreps }
}

/// ℤ/n with irreps χ_j(k) = ζ_n^{jk}.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group needs n ≥ 1".into()));
    }
    let table = GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())?;
    let labels = (0..n).map(|j| (format!("chi{j}"), 1)).collect();
    let chars = tabulate(&table, labels, |j, k| Cyclotomic::root_of_unity(n, (j * k) as i64));
    Group::new(format!("cyclic {n}"), table, chars)
}

/// S_3 acting on {0,1,2}; irreps trivial, sign, standard.
pub fn symmetric3() -> Result<Group> {
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
    let mult = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let table = GroupTable::new(mult)?;
    let fixed = |g: usize| (0..3).filter(|&i| perms[g][i] == i).count();
    let labels = vec![("trivial".into(), 1), ("sign".into(), 1), ("standard".into(), 2)];
    let chars = tabulate(&table, labels, |z, g| {
        let f = fixed(g) as i64;
        let sign = if f == 1 { -1 } else { 1 };
        Cyclotomic::integer(match z {
            0 => 1,
            1 => sign,
            _ => f - 1,
        })
    });
    Group::new("S3", table, chars)
}

/// Dihedral group of order 2n; element r^a s^b is stored at index a + n·b.
pub fn dihedral(n: usize) -> Result<Group> {
    if n < 2 {
        return Err(Error::InvalidGroup("dihedral group needs n ≥ 2".into()));
    }
    let decode = |g: usize| (g % n, g / n);
    let mult = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let ((a, b), (c, d)) = (decode(x), decode(y));
                    let c = if b == 0 { c } else { (n - c) % n };
                    (a + c) % n + n * ((b + d) % 2)
                })
                .collect()
        })
        .collect();
    let table = GroupTable::new(mult)?;

    // One-dimensional irreps as (χ(r), χ(s)) signs; n odd only allows χ(r) = 1.
    let mut linear: Vec<(i64, i64)> = vec![(1, 1), (1, -1)];
    if n.is_multiple_of(2) {
        linear.extend([(-1, 1), (-1, -1)]);
    }
    let two_dim = (n - 1) / 2;
    let mut labels: Vec<(String, usize)> =
        linear.iter().enumerate().map(|(i, _)| (format!("linear{i}"), 1)).collect();
    labels.extend((1..=two_dim).map(|h| (format!("rho{h}"), 2)));
    let nl = linear.len();
    let chars = tabulate(&table, labels, |z, g| {
        let (a, b) = decode(g);
        if z < nl {
            let (r, s) = linear[z];
            return Cyclotomic::integer(r.pow(a as u32) * if b == 1 { s } else { 1 });
        }
        if b == 1 {
            return Cyclotomic::zero();
        }
        let h = (z - nl + 1) as i64;
        Cyclotomic::root_of_unity(n, h * a as i64) + Cyclotomic::root_of_unity(n, -h * a as i64)
    });
    Group::new(format!("dihedral {n}"), table, chars)
}

/// Parses names such as `cyclic 3`, `Z/3`, `C3`, `S3`, `dihedral 4`, `D4`.
pub fn builtin_group(name: &str) -> Result<Group> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace() && *c != '_' && *c != '-').collect();
    let lower = compact.to_ascii_lowercase();
    let number = |prefix: &str| -> Option<usize> { lower.strip_prefix(prefix).and_then(|s| s.parse().ok()) };
    if lower == "s3" || lower == "sym3" || lower == "symmetric3" {
        return symmetric3();
    }
    if let Some(n) = number("cyclic").or_else(|| number("z/")).or_else(|| number("c")).or_else(|| number("z")) {
        return cyclic(n);
    }
    if let Some(n) = number("dihedral").or_else(|| number("d")) {
        return dihedral(n);
    }
    Err(Error::Unsupported(format!(
        "unknown group `{name}` (built-ins: cyclic n, S3, dihedral n)"
    )))
}

/// A built-in name, or a path to a JSON group file.
pub fn load_group(spec: &str) -> Result<Group> {
    let path = Path::new(spec);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {spec}: {e}")))?;
        return group_from_json(&text);
    }
    builtin_group(spec)
}

/// Σ_ζ dim ζ · χ_ζ(g) for every element g.
pub fn regular_character_sums(g: &Group) -> Vec<Cyclotomic> {
    (0..g.order())
        .map(|x| {
            (0..g.num_irreps()).fold(Cyclotomic::zero(), |acc, z| {
                acc + g.character(z, x).scale(&Rational::from_integer(g.dim(z).into()))
            })
        })
        .collect()
}

impl Irrep {
    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.to_rational().is_some())
    }
}

impl CharacterTable {
    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_structure() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(z2.table().conjugacy_classes().len(), 2);
        let s3 = symmetric3().unwrap();
        let sizes: Vec<usize> = s3.table().conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(cyclic(4).unwrap().table().conjugacy_classes().len(), 4);
        assert_eq!(dihedral(4).unwrap().table().conjugacy_classes().len(), 5);
        assert_eq!(dihedral(5).unwrap().table().conjugacy_classes().len(), 4);
    }

    #[test]
    fn builtins_validate() {
        for name in ["cyclic 1", "cyclic 2", "Z/3", "C5", "cyclic 6", "S3", "dihedral 2", "D3", "D4", "dihedral 5", "D6"] {
            let g = builtin_group(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(validate_character_table(g.characters(), g.table()).is_empty(), "{name}");
            for (x, s) in regular_character_sums(&g).into_iter().enumerate() {
                let expected = if x == g.table().identity() { g.order() as i64 } else { 0 };
                assert_eq!(s, Cyclotomic::integer(expected), "{name} at {x}");
            }
        }
        assert!(builtin_group("A5").is_err());
        assert!(cyclic(0).is_err());
    }

    #[test]
    fn small_tables() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(z2.characters().dims(), vec![1, 1]);
        assert_eq!(*z2.character(1, 1), Cyclotomic::integer(-1));
        assert_eq!(symmetric3().unwrap().characters().dims(), vec![1, 1, 2]);
        let z3 = cyclic(3).unwrap();
        assert_eq!(*z3.character(1, 1), Cyclotomic::root_of_unity(3, 1));
        assert_eq!(*z3.character(2, 1), Cyclotomic::root_of_unity(3, 2));
        assert!(!z3.irrep(1).is_rational());
    }

    #[test]
    fn flipped_sign_is_diagnosed() {
        let s3 = symmetric3().unwrap();
        let mut chars = s3.characters().clone();
        chars.irreps[1].values[1] = Cyclotomic::integer(1);
        let diags = validate_character_table(&chars, s3.table());
        assert!(diags.iter().any(|d| d.contains("row orthogonality") && d.contains("sign")), "{diags:?}");
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(vec![vec![0, 2], vec![1, 0]]).is_err());
        let z2 = cyclic(2).unwrap();
        let mut chars = z2.characters().clone();
        chars.classes[1].size = 2;
        assert!(!validate_character_table(&chars, z2.table()).is_empty());
        chars = z2.characters().clone();
        chars.irreps.pop();
        assert!(!validate_character_table(&chars, z2.table()).is_empty());
    }

    #[test]
    fn json_round_trip() {
        for g in [cyclic(3).unwrap(), symmetric3().unwrap(), dihedral(4).unwrap()] {
            let text = serde_json::to_string(&g.to_spec()).unwrap();
            let back = group_from_json(&text).unwrap();
            assert_eq!(back.characters(), g.characters());
            assert_eq!(back.table(), g.table());
        }
        let z2 = r#"{"order":2,"mult":[[0,1],[1,0]],"character_table":{"classes":[{"rep":0,"size":1},{"rep":1,"size":1}],
            "irreps":[{"dim":1,"values":[[[1,0,1]],[[1,0,1]]]},{"dim":1,"values":[[[1,0,1]],[[2,1,1]]]}]}}"#;
        let g = group_from_json(z2).unwrap();
        assert_eq!(*g.character(1, 1), Cyclotomic::integer(-1));
    }

    #[test]
    fn projections_and_multiplicities() {
        let s3 = symmetric3().unwrap();
        assert_eq!(s3.plancherel_weight(2), Rational::new(4.into(), 6.into()));
        let regular: Vec<Cyclotomic> = (0..6)
            .map(|g| Cyclotomic::integer(if g == s3.table().identity() { 6 } else { 0 }))
            .collect();
        let m = s3.decompose_character(&regular).unwrap();
        let expected: Vec<Rational> = s3.regular_multiplicities().iter().map(|&d| Rational::from_integer(d.into())).collect();
        assert_eq!(m, expected);
        let e = s3.table().identity();
        assert_eq!(s3.projection_coefficient(2, e), Cyclotomic::rational(Rational::new(4.into(), 6.into())));
        assert!(!s3.projection_coefficient(0, e).is_zero());
    }
}
