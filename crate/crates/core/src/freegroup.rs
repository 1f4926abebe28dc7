//! Freely reduced words in the free group `F_n = <a1, ..., an>`.
//!
//! Words are hash-consed: every [`ReducedWord`] with the same rank and letters
//! shares one allocation, so equality and hashing are pointer operations.
//! Orbit enumeration keys millions of configurations by words, which is where
//! this pays off.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("rank mismatch: F_{left} vs F_{right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("generator a{index} out of range 1..={rank}")]
    GeneratorOutOfRange { index: u32, rank: u32 },
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// One letter `a_i` or `a_i^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub index: u32,
    pub inverse: bool,
}

impl Generator {
    pub fn new(index: u32, inverse: bool) -> Self {
        Generator { index, inverse }
    }

    pub fn pos(index: u32) -> Self {
        Generator { index, inverse: false }
    }

    pub fn neg(index: u32) -> Self {
        Generator { index, inverse: true }
    }

    pub fn inv(self) -> Self {
        Generator { index: self.index, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Generator) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.index)
        } else {
            write!(f, "a{}", self.index)
        }
    }
}

#[derive(Debug)]
struct WordData {
    rank: u32,
    letters: Box<[Generator]>,
    text: Box<str>,
}

type InternKey = (u32, Box<[Generator]>);

fn interner() -> &'static RwLock<HashMap<InternKey, Arc<WordData>>> {
    static TABLE: OnceLock<RwLock<HashMap<InternKey, Arc<WordData>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn render(letters: &[Generator]) -> String {
    if letters.is_empty() {
        return "e".to_string();
    }
    let parts: Vec<String> = letters.iter().map(|g| g.to_string()).collect();
    parts.join("*")
}

/// Number of distinct words interned so far (all ranks).
pub fn interned_count() -> usize {
    interner().read().expect("word interner poisoned").len()
}

/// A freely reduced word over a fixed rank. Cheap to clone.
#[derive(Clone)]
pub struct ReducedWord(Arc<WordData>);

impl ReducedWord {
    /// Interns an already reduced letter sequence. Callers must guarantee
    /// reducedness and index range; use [`ReducedWord::from_letters`] otherwise.
    fn intern(rank: u32, letters: &[Generator]) -> ReducedWord {
        debug_assert!(letters.windows(2).all(|p| !p[0].cancels(p[1])));
        {
            let table = interner().read().expect("word interner poisoned");
            if let Some(data) = table.get(&(rank, letters) as &dyn InternLookup) {
                return ReducedWord(Arc::clone(data));
            }
        }
        let mut table = interner().write().expect("word interner poisoned");
        let key: InternKey = (rank, letters.into());
        let data = table
            .entry(key)
            .or_insert_with(|| {
                Arc::new(WordData { rank, letters: letters.into(), text: render(letters).into() })
            })
            .clone();
        ReducedWord(data)
    }

    pub fn identity(rank: u32) -> ReducedWord {
        ReducedWord::intern(rank, &[])
    }

    pub fn generator(rank: u32, g: Generator) -> Result<ReducedWord, FreeGroupError> {
        ReducedWord::from_letters(rank, &[g])
    }

    /// Freely reduces `letters` and interns the result.
    pub fn from_letters(rank: u32, letters: &[Generator]) -> Result<ReducedWord, FreeGroupError> {
        if rank == 0 {
            return Err(FreeGroupError::ZeroRank);
        }
        let mut stack: Vec<Generator> = Vec::with_capacity(letters.len());
        for &g in letters {
            if g.index == 0 || g.index > rank {
                return Err(FreeGroupError::GeneratorOutOfRange { index: g.index, rank });
            }
            push_reduced(&mut stack, g);
        }
        Ok(ReducedWord::intern(rank, &stack))
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0.letters
    }

    pub fn len(&self) -> usize {
        self.0.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.letters.is_empty()
    }

    /// Canonical rendering in the word grammar (`e`, `a1*a2^-1`, ...).
    pub fn as_str(&self) -> &str {
        &self.0.text
    }

    pub fn first(&self) -> Option<Generator> {
        self.0.letters.first().copied()
    }

    pub fn last(&self) -> Option<Generator> {
        self.0.letters.last().copied()
    }

    pub fn try_mul(&self, other: &ReducedWord) -> Result<ReducedWord, FreeGroupError> {
        if self.rank() != other.rank() {
            return Err(FreeGroupError::RankMismatch { left: self.rank(), right: other.rank() });
        }
        if other.is_identity() {
            return Ok(self.clone());
        }
        if self.is_identity() {
            return Ok(other.clone());
        }
        let a = self.letters();
        let b = other.letters();
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k].cancels(b[k]) {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Ok(ReducedWord::intern(self.rank(), &out))
    }

    /// `self * g` for a single letter.
    pub fn mul_gen(&self, g: Generator) -> ReducedWord {
        let mut out: Vec<Generator> = self.letters().to_vec();
        push_reduced(&mut out, g);
        ReducedWord::intern(self.rank(), &out)
    }

    /// `g * self` for a single letter.
    pub fn gen_mul(&self, g: Generator) -> ReducedWord {
        let letters = self.letters();
        if letters.first().is_some_and(|&h| g.cancels(h)) {
            return ReducedWord::intern(self.rank(), &letters[1..]);
        }
        let mut out = Vec::with_capacity(letters.len() + 1);
        out.push(g);
        out.extend_from_slice(letters);
        ReducedWord::intern(self.rank(), &out)
    }

    pub fn inverse(&self) -> ReducedWord {
        let out: Vec<Generator> = self.letters().iter().rev().map(|g| g.inv()).collect();
        ReducedWord::intern(self.rank(), &out)
    }

    /// Word-metric distance `|self^-1 other|`.
    pub fn distance(&self, other: &ReducedWord) -> usize {
        let a = self.letters();
        let b = other.letters();
        let common = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        a.len() + b.len() - 2 * common
    }

    /// Longest common prefix, i.e. the Cayley-tree meet of the two words with `e`.
    pub fn common_prefix(&self, other: &ReducedWord) -> ReducedWord {
        let a = self.letters();
        let common = a.iter().zip(other.letters()).take_while(|(x, y)| x == y).count();
        ReducedWord::intern(self.rank(), &a[..common])
    }

    pub fn prefix(&self, len: usize) -> ReducedWord {
        ReducedWord::intern(self.rank(), &self.letters()[..len])
    }

    /// The word with its last letter removed (the neighbour towards `e`).
    pub fn parent(&self) -> Option<ReducedWord> {
        if self.is_identity() {
            None
        } else {
            Some(self.prefix(self.len() - 1))
        }
    }

    /// All `2n` neighbours `self * a_i^{+-1}` in the Cayley tree.
    pub fn neighbours(&self) -> Vec<ReducedWord> {
        all_generators(self.rank()).map(|g| self.mul_gen(g)).collect()
    }
}

fn push_reduced(stack: &mut Vec<Generator>, g: Generator) {
    if stack.last().is_some_and(|&h| h.cancels(g)) {
        stack.pop();
    } else {
        stack.push(g);
    }
}

/// `a1, a1^-1, a2, a2^-1, ...`
pub fn all_generators(rank: u32) -> impl Iterator<Item = Generator> {
    (1..=rank).flat_map(|i| [Generator::pos(i), Generator::neg(i)])
}

// Borrowed lookup into the interner without allocating a boxed key.
trait InternLookup {
    fn key(&self) -> (u32, &[Generator]);
}

impl InternLookup for InternKey {
    fn key(&self) -> (u32, &[Generator]) {
        (self.0, &self.1)
    }
}

impl InternLookup for (u32, &[Generator]) {
    fn key(&self) -> (u32, &[Generator]) {
        (self.0, self.1)
    }
}

impl<'a> std::borrow::Borrow<dyn InternLookup + 'a> for InternKey {
    fn borrow(&self) -> &(dyn InternLookup + 'a) {
        self
    }
}

impl PartialEq for dyn InternLookup + '_ {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for dyn InternLookup + '_ {}

impl Hash for dyn InternLookup + '_ {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialEq for ReducedWord {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for ReducedWord {}

impl Hash for ReducedWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::ptr::hash(Arc::as_ptr(&self.0), state)
    }
}

/// Ordered by length, then by rendered text (the canonical serialization order).
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.len()
            .cmp(&other.len())
            .then_with(|| self.as_str().cmp(other.as_str()))
            .then_with(|| self.rank().cmp(&other.rank()))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Group law. Panics on rank mismatch; use [`ReducedWord::try_mul`] for a
/// fallible version.
impl Mul for &ReducedWord {
    type Output = ReducedWord;

    fn mul(self, rhs: &ReducedWord) -> ReducedWord {
        self.try_mul(rhs).expect("multiplying words of different rank")
    }
}

pub fn multiply(u: &ReducedWord, v: &ReducedWord) -> Result<ReducedWord, FreeGroupError> {
    u.try_mul(v)
}

pub fn invert(u: &ReducedWord) -> ReducedWord {
    u.inverse()
}

/// Positively oriented Cayley edge `[base, base * a_gen]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyEdge {
    pub base: ReducedWord,
    pub gen: u32,
}

impl CayleyEdge {
    pub fn new(base: ReducedWord, gen: u32) -> Self {
        CayleyEdge { base, gen }
    }

    /// The edge joining `u` and `u * g`, stored with positive orientation.
    pub fn from_step(u: &ReducedWord, g: Generator) -> Self {
        if g.inverse {
            CayleyEdge { base: u.mul_gen(g), gen: g.index }
        } else {
            CayleyEdge { base: u.clone(), gen: g.index }
        }
    }

    /// The edge between two adjacent vertices, or `None` if they are not adjacent.
    pub fn between(u: &ReducedWord, v: &ReducedWord) -> Option<Self> {
        let step = &u.inverse() * v;
        match step.letters() {
            [g] => Some(CayleyEdge::from_step(u, *g)),
            _ => None,
        }
    }

    pub fn tip(&self) -> ReducedWord {
        self.base.mul_gen(Generator::pos(self.gen))
    }

    pub fn endpoints(&self) -> (ReducedWord, ReducedWord) {
        (self.base.clone(), self.tip())
    }

    /// Left translation `w * [base, base a_i] = [w base, w base a_i]`.
    pub fn translate(&self, w: &ReducedWord) -> CayleyEdge {
        CayleyEdge { base: w * &self.base, gen: self.gen }
    }
}

impl fmt::Display for CayleyEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.base, self.tip())
    }
}

/// Every reduced word of length at most `radius`, sorted by (length, text).
pub fn ball(rank: u32, radius: usize) -> Vec<ReducedWord> {
    assert!(rank >= 1, "rank must be at least 1");
    let mut out = vec![ReducedWord::identity(rank)];
    let mut frontier = out.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in all_generators(rank) {
                if w.last().is_some_and(|h| h.cancels(g)) {
                    continue;
                }
                next.push(w.mul_gen(g));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

/// `|ball(rank, radius)|` from the growth formula of the 2n-regular tree.
pub fn ball_size(rank: u32, radius: usize) -> u128 {
    if rank == 1 {
        return 2 * radius as u128 + 1;
    }
    let q = 2 * rank as u128 - 1;
    1 + 2 * rank as u128 * (q.pow(radius as u32) - 1) / (q - 1)
}

/// The vertex path from `u` to `v` in the Cayley tree, both ends included.
pub fn geodesic(u: &ReducedWord, v: &ReducedWord) -> Result<Vec<ReducedWord>, FreeGroupError> {
    let step = u.inverse().try_mul(v)?;
    let mut path = Vec::with_capacity(step.len() + 1);
    let mut cur = u.clone();
    path.push(cur.clone());
    for &g in step.letters() {
        cur = cur.mul_gen(g);
        path.push(cur.clone());
    }
    Ok(path)
}

/// Breadth-first distances from `e` within the given vertex set (tree property
/// check helper; every word of length `k+1` has its parent at length `k`).
pub fn bfs_layers(rank: u32, radius: usize) -> Vec<Vec<ReducedWord>> {
    let e = ReducedWord::identity(rank);
    let mut seen: BTreeSet<ReducedWord> = BTreeSet::from([e.clone()]);
    let mut layers = vec![vec![e.clone()]];
    let mut queue = VecDeque::from([(e, 0usize)]);
    while let Some((w, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for nb in w.neighbours() {
            if seen.insert(nb.clone()) {
                if layers.len() <= d + 1 {
                    layers.push(Vec::new());
                }
                layers[d + 1].push(nb.clone());
                queue.push_back((nb, d + 1));
            }
        }
    }
    layers
}

/// Parses `e | term ("*" term)*` with `term := "a" INT ("^-1")?`, then reduces.
pub fn parse_word(text: &str, rank: u32) -> Result<ReducedWord, FreeGroupError> {
    if rank == 0 {
        return Err(FreeGroupError::ZeroRank);
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let syntax = |position: usize, message: &str| FreeGroupError::Syntax {
        position,
        message: message.to_string(),
    };

    skip_ws(&mut pos);
    if bytes.get(pos) == Some(&b'e') {
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(syntax(pos, "unexpected input after 'e'"));
        }
        return Ok(ReducedWord::identity(rank));
    }

    let mut letters = Vec::new();
    loop {
        if bytes.get(pos) != Some(&b'a') {
            return Err(syntax(pos, "expected 'a'"));
        }
        pos += 1;
        let start = pos;
        if !bytes.get(pos).is_some_and(|b| (b'1'..=b'9').contains(b)) {
            return Err(syntax(pos, "expected generator index starting with 1-9"));
        }
        while bytes.get(pos).is_some_and(|b| b.is_ascii_digit()) {
            pos += 1;
        }
        let index: u32 = text[start..pos]
            .parse()
            .map_err(|_| syntax(start, "generator index too large"))?;
        if index > rank {
            return Err(FreeGroupError::GeneratorOutOfRange { index, rank });
        }
        let inverse = if text[pos..].starts_with("^-1") {
            pos += 3;
            true
        } else if bytes.get(pos) == Some(&b'^') {
            return Err(syntax(pos, "only the exponent ^-1 is allowed"));
        } else {
            false
        };
        letters.push(Generator { index, inverse });
        skip_ws(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'*') => {
                pos += 1;
                skip_ws(&mut pos);
            }
            Some(_) => return Err(syntax(pos, "expected '*' or end of input")),
        }
    }
    ReducedWord::from_letters(rank, &letters)
}
