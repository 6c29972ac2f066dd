use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use super::GroupError;

/// A concrete abelian group with canonical element representatives.
///
/// `Ord` on elements is the canonical search order: ascending residues in
/// `ℤ_n`, ascending integers in `ℤ`, lexicographic vectors in `ℤ^m`.
pub trait AbelianGroup: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync + Serialize + DeserializeOwned;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Whether `a` is a canonical representative of this group.
    fn contains(&self, a: &Self::Elem) -> bool;
    fn spec(&self) -> GroupSpec;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// `ℤ_n`, elements are residues in `[0, n-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cyclic {
    n: u64,
}

impl Cyclic {
    pub fn new(n: u64) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidGroup(format!("cyclic order must be at least 2, got {n}")));
        }
        Ok(Cyclic { n })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn reduce(&self, z: i64) -> u64 {
        z.rem_euclid(self.n as i64) as u64
    }
}

impl AbelianGroup for Cyclic {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.n - a
        }
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.n
    }

    fn spec(&self) -> GroupSpec {
        GroupSpec::Cyclic(self.n)
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl AbelianGroup for Integers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow in ℤ")
    }

    fn neg(&self, a: &i64) -> i64 {
        -a
    }

    fn contains(&self, _: &i64) -> bool {
        true
    }

    fn spec(&self) -> GroupSpec {
        GroupSpec::Integers
    }
}

/// The free abelian group `ℤ^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Free {
    rank: usize,
}

impl Free {
    pub fn new(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidGroup("free group rank must be at least 1".into()));
        }
        Ok(Free { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl AbelianGroup for Free {
    type Elem = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect("integer overflow in ℤ^m")).collect()
    }

    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn contains(&self, a: &Vec<i64>) -> bool {
        a.len() == self.rank
    }

    fn spec(&self) -> GroupSpec {
        GroupSpec::Free(self.rank)
    }
}

/// Which group a set lives in, as written on the command line:
/// `Z7`, `Z`, `Z^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(u64),
    Integers,
    Free(usize),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Integers => write!(f, "Z"),
            GroupSpec::Free(m) => write!(f, "Z^{m}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::InvalidGroup(format!("cannot parse group {s:?} (expected Zn, Z or Z^m)"));
        let rest = s.trim().strip_prefix('Z').ok_or_else(bad)?;
        if rest.is_empty() {
            return Ok(GroupSpec::Integers);
        }
        if let Some(rank) = rest.strip_prefix('^') {
            let m: usize = rank.parse().map_err(|_| bad())?;
            Free::new(m)?;
            return Ok(GroupSpec::Free(m));
        }
        let n: u64 = rest.strip_prefix('_').unwrap_or(rest).parse().map_err(|_| bad())?;
        Cyclic::new(n)?;
        Ok(GroupSpec::Cyclic(n))
    }
}

/// Which partial-sum problem a set is posed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Partial sums nonzero and pairwise distinct; requires `Σ A ≠ 0`.
    Alspach,
    /// Partial sums pairwise distinct.
    Gadms,
    /// Partial sums pairwise distinct; requires `Σ A = 0` and no pair `{x, -x}`.
    Cmpp,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Alspach, Variant::Gadms, Variant::Cmpp];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Alspach => "alspach",
            Variant::Gadms => "gadms",
            Variant::Cmpp => "cmpp",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alspach" => Ok(Variant::Alspach),
            "gadms" | "g-adms" => Ok(Variant::Gadms),
            "cmpp" => Ok(Variant::Cmpp),
            _ => Err(GroupError::InvalidGroup(format!("unknown variant {s:?}"))),
        }
    }
}
