//! Finite Weyl groups presented by a crystallographic Coxeter matrix together
//! with an involutive diagram twist.
//!
//! Elements are enumerated once, at construction, as the orbit of the regular
//! weight `rho` under the reflection representation on the weight lattice.
//! Every element is then an index into that enumeration; left and right
//! multiplication by generators, inverses, lengths and the twist are all
//! table lookups.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of a simple reflection, 0-based. Displayed 1-based as `s1, s2, ...`.
pub type Generator = usize;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("Coxeter matrix is empty")]
    Empty,
    #[error("Coxeter matrix row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("Coxeter matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry ({0}, {0}) must be 1")]
    BadDiagonal(usize),
    #[error("bond order {order} at ({i}, {j}) is not crystallographic (allowed: 2, 3, 4, 6)")]
    BadBond { i: usize, j: usize, order: u8 },
    #[error("Coxeter group is infinite: {0}")]
    Infinite(String),
    #[error("twist has {len} entries, expected {rank}")]
    TwistLength { len: usize, rank: usize },
    #[error("twist is not an involutive permutation of the generators")]
    TwistNotInvolution,
    #[error("twist is not a diagram automorphism: m({i},{j}) differs from its image")]
    TwistNotAutomorphism { i: usize, j: usize },
    #[error("element belongs to a different Coxeter system")]
    MixedSystems,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
}

/// An element of a [`CoxeterSystem`].
///
/// Equality is group-element equality. The ordering is by enumeration index,
/// which refines the length function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    system: u64,
    index: u32,
}

impl WeylElement {
    /// Position of the element in [`CoxeterSystem::elements`].
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// A finite Coxeter system `(W, S)` with diagram twist `theta`.
#[derive(Clone)]
pub struct CoxeterSystem {
    rank: usize,
    matrix: Vec<Vec<u8>>,
    twist: Vec<Generator>,
    tag: u64,
    length: Vec<u32>,
    // w = s_first[w] * parent[w], with parent[w] one shorter.
    first: Vec<u8>,
    parent: Vec<u32>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    inverse: Vec<u32>,
    twisted: Vec<u32>,
    reflections: Vec<u32>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("rank", &self.rank)
            .field("matrix", &self.matrix)
            .field("twist", &self.twist)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.twist == other.twist
    }
}

impl Eq for CoxeterSystem {}

fn fingerprint(matrix: &[Vec<u8>], twist: &[Generator]) -> u64 {
    // FNV-1a; stable across runs so separately built copies interoperate.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    feed(matrix.len() as u8);
    for row in matrix {
        for &m in row {
            feed(m);
        }
    }
    for &t in twist {
        feed(t as u8);
    }
    h
}

fn check_matrix(matrix: &[Vec<u8>]) -> Result<(), CoxeterError> {
    let rank = matrix.len();
    if rank == 0 {
        return Err(CoxeterError::Empty);
    }
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != rank {
            return Err(CoxeterError::NotSquare { row, len: r.len(), rank });
        }
    }
    for i in 0..rank {
        if matrix[i][i] != 1 {
            return Err(CoxeterError::BadDiagonal(i));
        }
        for j in 0..rank {
            if matrix[i][j] != matrix[j][i] {
                return Err(CoxeterError::NotSymmetric(i, j));
            }
            if i != j && !matches!(matrix[i][j], 2 | 3 | 4 | 6) {
                return Err(CoxeterError::BadBond { i, j, order: matrix[i][j] });
            }
        }
    }
    Ok(())
}

fn check_twist(matrix: &[Vec<u8>], twist: &[Generator]) -> Result<(), CoxeterError> {
    let rank = matrix.len();
    if twist.len() != rank {
        return Err(CoxeterError::TwistLength { len: twist.len(), rank });
    }
    if twist.iter().any(|&t| t >= rank) || (0..rank).any(|i| twist[twist[i]] != i) {
        return Err(CoxeterError::TwistNotInvolution);
    }
    for i in 0..rank {
        for j in 0..rank {
            if matrix[twist[i]][twist[j]] != matrix[i][j] {
                return Err(CoxeterError::TwistNotAutomorphism { i, j });
            }
        }
    }
    Ok(())
}

/// Integer Cartan matrix realising the Coxeter matrix. Only forests admit a
/// finite crystallographic group, and on a forest any orientation of the
/// multiple bonds is symmetrizable.
fn cartan_matrix(matrix: &[Vec<u8>]) -> Result<Vec<Vec<i64>>, CoxeterError> {
    let rank = matrix.len();
    let mut root: Vec<usize> = (0..rank).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut cartan = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        cartan[i][i] = 2;
        for j in i + 1..rank {
            let k = match matrix[i][j] {
                2 => continue,
                3 => 1,
                4 => 2,
                6 => 3,
                order => return Err(CoxeterError::BadBond { i, j, order }),
            };
            let (a, b) = (find(&mut root, i), find(&mut root, j));
            if a == b {
                return Err(CoxeterError::Infinite(
                    "Coxeter diagram contains a cycle".to_string(),
                ));
            }
            root[a] = b;
            cartan[i][j] = -1;
            cartan[j][i] = -k;
        }
    }
    Ok(cartan)
}

fn reflect(cartan: &[Vec<i64>], s: usize, v: &mut [i64]) -> Option<()> {
    let c = v[s];
    for (x, a) in v.iter_mut().zip(&cartan[s]) {
        *x = x.checked_sub(c.checked_mul(*a)?)?;
    }
    Some(())
}

impl CoxeterSystem {
    /// Builds the system with the default element cap.
    pub fn new(matrix: Vec<Vec<u8>>, twist: Vec<Generator>) -> Result<Self, CoxeterError> {
        Self::with_cap(matrix, twist, DEFAULT_ELEMENT_CAP)
    }

    /// Builds the system with the trivial twist.
    pub fn untwisted(matrix: Vec<Vec<u8>>) -> Result<Self, CoxeterError> {
        let rank = matrix.len();
        Self::new(matrix, (0..rank).collect())
    }

    /// Standard Cartan type such as `A3`, `B2`, `G2`, `E6`, with trivial twist.
    pub fn from_type(name: &str) -> Result<Self, CoxeterError> {
        Self::untwisted(cartan_type_matrix(name)?)
    }

    pub fn with_cap(
        matrix: Vec<Vec<u8>>,
        twist: Vec<Generator>,
        cap: usize,
    ) -> Result<Self, CoxeterError> {
        check_matrix(&matrix)?;
        check_twist(&matrix, &twist)?;
        let cartan = cartan_matrix(&matrix)?;
        let rank = matrix.len();
        let overflow = || CoxeterError::Infinite("weight coordinates overflowed".to_string());

        let rho = vec![1i64; rank];
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        let mut vectors = vec![rho.clone()];
        let mut length = vec![0u32];
        let mut first = vec![u8::MAX];
        let mut parent = vec![u32::MAX];
        index.insert(rho, 0);
        let mut lmul: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < vectors.len() {
            for s in 0..rank {
                let mut v = vectors[head].clone();
                reflect(&cartan, s, &mut v).ok_or_else(overflow)?;
                let next = match index.get(&v) {
                    Some(&k) => k,
                    None => {
                        let k = vectors.len() as u32;
                        if vectors.len() >= cap {
                            return Err(CoxeterError::Infinite(format!(
                                "more than {cap} elements"
                            )));
                        }
                        index.insert(v.clone(), k);
                        vectors.push(v);
                        length.push(length[head] + 1);
                        first.push(s as u8);
                        parent.push(head as u32);
                        k
                    }
                };
                lmul.push(next);
            }
            head += 1;
        }

        let order = vectors.len();
        let mut sys = CoxeterSystem {
            tag: fingerprint(&matrix, &twist),
            rank,
            matrix,
            twist,
            length,
            first,
            parent,
            lmul,
            rmul: Vec::new(),
            inverse: vec![0; order],
            twisted: vec![0; order],
            reflections: Vec::new(),
        };
        let mut rmul = vec![0u32; order * rank];
        for w in 0..order {
            let word = sys.word_of(w);
            for s in 0..rank {
                // w * s = a1 (a2 (... ak (s)))
                let mut x = sys.lmul_idx(s, 0);
                for &a in word.iter().rev() {
                    x = sys.lmul_idx(a, x);
                }
                rmul[w * rank + s] = x as u32;
            }
            let mut inv = 0;
            let mut tw = 0;
            for &a in &word {
                inv = sys.lmul_idx(a, inv);
            }
            for &a in word.iter().rev() {
                tw = sys.lmul_idx(sys.twist[a], tw);
            }
            sys.inverse[w] = inv as u32;
            sys.twisted[w] = tw as u32;
        }
        sys.rmul = rmul;
        let mut refl = BTreeSet::new();
        for w in sys.elements().collect::<Vec<_>>() {
            for s in 0..rank {
                refl.insert(sys.multiply(sys.rmul(w, s), sys.inverse(w)).index() as u32);
            }
        }
        sys.reflections = refl.into_iter().collect();
        Ok(sys)
    }

    fn lmul_idx(&self, s: Generator, w: usize) -> usize {
        self.lmul[w * self.rank + s] as usize
    }

    fn word_of(&self, mut w: usize) -> Vec<Generator> {
        let mut word = Vec::with_capacity(self.length[w] as usize);
        while w != 0 {
            word.push(self.first[w] as usize);
            w = self.parent[w] as usize;
        }
        word
    }

    fn elem(&self, index: usize) -> WeylElement {
        WeylElement { system: self.tag, index: index as u32 }
    }

    fn idx(&self, w: WeylElement) -> usize {
        assert_eq!(w.system, self.tag, "element belongs to a different Coxeter system");
        w.index as usize
    }

    /// Checks that `w` was produced by this system (or an identical copy).
    pub fn check(&self, w: WeylElement) -> Result<(), CoxeterError> {
        if w.system == self.tag && (w.index as usize) < self.length.len() {
            Ok(())
        } else {
            Err(CoxeterError::MixedSystems)
        }
    }

    pub fn owns(&self, w: WeylElement) -> bool {
        self.check(w).is_ok()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.length.len()
    }

    pub fn matrix(&self) -> &[Vec<u8>] {
        &self.matrix
    }

    /// The diagram twist as a permutation of generator indices.
    pub fn twist(&self) -> &[Generator] {
        &self.twist
    }

    pub fn has_trivial_twist(&self) -> bool {
        self.twist.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn identity(&self) -> WeylElement {
        self.elem(0)
    }

    pub fn generator(&self, s: Generator) -> WeylElement {
        assert!(s < self.rank, "generator index {s} out of range");
        self.elem(self.lmul_idx(s, 0))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        0..self.rank
    }

    /// Element at a given enumeration index.
    pub fn element(&self, index: usize) -> WeylElement {
        assert!(index < self.order());
        self.elem(index)
    }

    /// All elements, duplicate free, ordered by enumeration index (so by length).
    pub fn elements(&self) -> impl ExactSizeIterator<Item = WeylElement> + '_ {
        (0..self.order()).map(|i| self.elem(i))
    }

    pub fn length(&self, w: WeylElement) -> usize {
        self.length[self.idx(w)] as usize
    }

    pub fn max_length(&self) -> usize {
        *self.length.last().unwrap() as usize
    }

    pub fn longest_element(&self) -> WeylElement {
        self.elem(self.order() - 1)
    }

    /// `s * w`
    pub fn lmul(&self, s: Generator, w: WeylElement) -> WeylElement {
        self.elem(self.lmul_idx(s, self.idx(w)))
    }

    /// `w * s`
    pub fn rmul(&self, w: WeylElement, s: Generator) -> WeylElement {
        self.elem(self.rmul[self.idx(w) * self.rank + s] as usize)
    }

    pub fn multiply(&self, u: WeylElement, w: WeylElement) -> WeylElement {
        let mut x = self.idx(w);
        for &a in self.word_of(self.idx(u)).iter().rev() {
            x = self.lmul_idx(a, x);
        }
        self.elem(x)
    }

    pub fn try_multiply(&self, u: WeylElement, w: WeylElement) -> Result<WeylElement, CoxeterError> {
        self.check(u)?;
        self.check(w)?;
        Ok(self.multiply(u, w))
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        self.elem(self.inverse[self.idx(w)] as usize)
    }

    pub fn is_left_descent(&self, s: Generator, w: WeylElement) -> bool {
        let i = self.idx(w);
        self.length[self.lmul_idx(s, i)] < self.length[i]
    }

    pub fn is_right_descent(&self, w: WeylElement, s: Generator) -> bool {
        let i = self.idx(w);
        self.length[self.rmul[i * self.rank + s] as usize] < self.length[i]
    }

    pub fn left_descents(&self, w: WeylElement) -> BTreeSet<Generator> {
        self.generators().filter(|&s| self.is_left_descent(s, w)).collect()
    }

    pub fn right_descents(&self, w: WeylElement) -> BTreeSet<Generator> {
        self.generators().filter(|&s| self.is_right_descent(w, s)).collect()
    }

    /// Product of a word `a1 a2 ... ak`.
    pub fn from_word(&self, word: &[Generator]) -> Result<WeylElement, CoxeterError> {
        let mut x = 0;
        for &a in word.iter().rev() {
            if a >= self.rank {
                return Err(CoxeterError::BadGenerator(a));
            }
            x = self.lmul_idx(a, x);
        }
        Ok(self.elem(x))
    }

    /// The canonical reduced word (leftmost letter chosen at enumeration).
    pub fn reduced_word(&self, w: WeylElement) -> Vec<Generator> {
        self.word_of(self.idx(w))
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: WeylElement) -> Vec<Vec<Generator>> {
        let mut memo: HashMap<usize, Vec<Vec<Generator>>> = HashMap::new();
        self.reduced_words_rec(self.idx(w), &mut memo)
    }

    fn reduced_words_rec(
        &self,
        w: usize,
        memo: &mut HashMap<usize, Vec<Vec<Generator>>>,
    ) -> Vec<Vec<Generator>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        if let Some(words) = memo.get(&w) {
            return words.clone();
        }
        let mut out = Vec::new();
        for s in 0..self.rank {
            let sw = self.lmul_idx(s, w);
            if self.length[sw] < self.length[w] {
                for tail in self.reduced_words_rec(sw, memo) {
                    let mut word = Vec::with_capacity(tail.len() + 1);
                    word.push(s);
                    word.extend(tail);
                    out.push(word);
                }
            }
        }
        memo.insert(w, out.clone());
        out
    }

    /// Bruhat order `u <= w`, by the lifting property: for a left descent `s`
    /// of `w`, `u <= w` iff `min(u, su) <= sw`.
    pub fn bruhat_leq(&self, u: WeylElement, w: WeylElement) -> bool {
        let (mut u, mut w) = (self.idx(u), self.idx(w));
        loop {
            if self.length[u] > self.length[w] {
                return false;
            }
            if self.length[u] == self.length[w] {
                return u == w;
            }
            let s = self.first[w] as usize;
            let su = self.lmul_idx(s, u);
            if self.length[su] < self.length[u] {
                u = su;
            }
            w = self.parent[w] as usize;
        }
    }

    pub fn try_bruhat_leq(&self, u: WeylElement, w: WeylElement) -> Result<bool, CoxeterError> {
        self.check(u)?;
        self.check(w)?;
        Ok(self.bruhat_leq(u, w))
    }

    /// Demazure product `s * w`: `sw` if that is longer, else `w`.
    pub fn demazure_generator(&self, s: Generator, w: WeylElement) -> WeylElement {
        let i = self.idx(w);
        let sw = self.lmul_idx(s, i);
        if self.length[sw] > self.length[i] {
            self.elem(sw)
        } else {
            w
        }
    }

    /// Demazure product `w * s` on the right.
    pub fn demazure_generator_right(&self, w: WeylElement, s: Generator) -> WeylElement {
        if self.is_right_descent(w, s) {
            w
        } else {
            self.rmul(w, s)
        }
    }

    /// Demazure (0-Hecke monoid) product `u * w`.
    pub fn demazure(&self, u: WeylElement, w: WeylElement) -> WeylElement {
        let mut x = w;
        for &a in self.reduced_word(u).iter().rev() {
            x = self.demazure_generator(a, x);
        }
        x
    }

    pub fn try_demazure(&self, u: WeylElement, w: WeylElement) -> Result<WeylElement, CoxeterError> {
        self.check(u)?;
        self.check(w)?;
        Ok(self.demazure(u, w))
    }

    /// Demazure product of a word, `a1 * a2 * ... * ak`.
    pub fn demazure_word(&self, word: &[Generator]) -> WeylElement {
        let mut x = self.identity();
        for &a in word.iter().rev() {
            x = self.demazure_generator(a, x);
        }
        x
    }

    /// The diagram automorphism induced by the twist.
    pub fn twist_apply(&self, w: WeylElement) -> WeylElement {
        self.elem(self.twisted[self.idx(w)] as usize)
    }

    /// `theta(w) = w^{-1}`
    pub fn is_twisted_involution(&self, w: WeylElement) -> bool {
        self.twist_apply(w) == self.inverse(w)
    }

    /// All reflections `w s w^{-1}`.
    pub fn reflections(&self) -> impl Iterator<Item = WeylElement> + '_ {
        self.reflections.iter().map(|&r| self.elem(r as usize))
    }

    /// Elements covered by `w` in the Bruhat order.
    pub fn bruhat_lower_covers(&self, w: WeylElement) -> Vec<WeylElement> {
        let l = self.length(w);
        let mut out: Vec<WeylElement> = self
            .reflections()
            .map(|t| self.multiply(t, w))
            .filter(|&tw| self.length(tw) + 1 == l)
            .collect();
        out.sort();
        out
    }

    /// Bruhat-minimal members of `set`.
    pub fn min_elements<I>(&self, set: I) -> BTreeSet<WeylElement>
    where
        I: IntoIterator<Item = WeylElement>,
    {
        let mut items: Vec<WeylElement> = set.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        items.sort_by_key(|&w| (self.length(w), w));
        let mut mins: Vec<WeylElement> = Vec::new();
        for x in items {
            // anything strictly below x lies above some minimal element of smaller length
            if !mins.iter().any(|&m| self.length(m) < self.length(x) && self.bruhat_leq(m, x)) {
                mins.push(x);
            }
        }
        mins.into_iter().collect()
    }

    /// Members of `set` of minimal length.
    pub fn min_length_elements<I>(&self, set: I) -> BTreeSet<WeylElement>
    where
        I: IntoIterator<Item = WeylElement>,
    {
        let items: BTreeSet<WeylElement> = set.into_iter().collect();
        let Some(best) = items.iter().map(|&w| self.length(w)).min() else {
            return BTreeSet::new();
        };
        items.into_iter().filter(|&w| self.length(w) == best).collect()
    }

    /// Minimal length representatives of `W / W_J`.
    pub fn is_min_coset_rep(&self, w: WeylElement, parabolic: &BTreeSet<Generator>) -> bool {
        parabolic.iter().all(|&s| !self.is_right_descent(w, s))
    }

    /// Word formatted as `s2,s1,s2`, or `e` for the identity.
    pub fn format_word(word: &[Generator]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join(",")
    }

    pub fn format(&self, w: WeylElement) -> String {
        Self::format_word(&self.reduced_word(w))
    }

    /// Parses `s2,s1,s2,s3`, `2,1,2,3` or `e`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Generator>, CoxeterError> {
        parse_word(text, self.rank)
    }
}

/// Parses a comma separated word of 1-based generators; see [`CoxeterSystem::parse_word`].
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<Generator>, CoxeterError> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let digits = tok.strip_prefix('s').unwrap_or(tok);
            match digits.parse::<usize>() {
                Ok(k) if k >= 1 && k <= rank => Ok(k - 1),
                Ok(k) => Err(CoxeterError::BadGenerator(k)),
                Err(_) => Err(CoxeterError::BadGenerator(usize::MAX)),
            }
        })
        .collect()
}

/// Coxeter matrix of a standard Cartan type (`A1`..., `B2`, `C3`, `D4`,
/// `E6`-`E8`, `F4`, `G2`), Bourbaki numbering. Products are written `A1xA2`.
pub fn cartan_type_matrix(name: &str) -> Result<Vec<Vec<u8>>, CoxeterError> {
    let unknown = || CoxeterError::UnknownType(name.to_string());
    let parts: Vec<&str> = name.split(['x', 'X', '*']).collect();
    if parts.len() > 1 {
        let blocks = parts
            .iter()
            .map(|p| cartan_type_matrix(p.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        let rank: usize = blocks.iter().map(Vec::len).sum();
        let mut m = vec![vec![2u8; rank]; rank];
        let mut off = 0;
        for b in blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    m[off + i][off + j] = x;
                }
            }
            off += b.len();
        }
        return Ok(m);
    }
    let name = name.trim();
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let mut m = vec![vec![2u8; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut bond = |i: usize, j: usize, order: u8| {
        m[i][j] = order;
        m[j][i] = order;
    };
    match (family, n) {
        ('A', n) if n >= 1 => (1..n).for_each(|i| bond(i - 1, i, 3)),
        ('B' | 'C', n) if n >= 2 => {
            (1..n - 1).for_each(|i| bond(i - 1, i, 3));
            bond(n - 2, n - 1, 4);
        }
        ('D', n) if n >= 4 => {
            (1..n - 1).for_each(|i| bond(i - 1, i, 3));
            bond(n - 3, n - 1, 3);
        }
        ('E', 6..=8) => {
            bond(0, 2, 3);
            bond(1, 3, 3);
            (3..n).for_each(|i| bond(i - 1, i, 3));
        }
        ('F', 4) => {
            bond(0, 1, 3);
            bond(1, 2, 4);
            bond(2, 3, 3);
        }
        ('G', 2) => bond(0, 1, 6),
        _ => return Err(unknown()),
    }
    Ok(m)
}
