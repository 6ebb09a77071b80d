//! Hash-consed scoring game trees.
//!
//! Every node lives in a process-wide, append-only store and is addressed by
//! a [`GameId`]. Option lists are sorted by a structural key and
//! deduplicated before interning, so two structurally identical trees always
//! receive the same id. The store is guarded by a single reader/writer lock:
//! lookups take the read side, insertions the write side, and an insertion
//! re-checks the index under the write lock so racing threads converge on
//! one id.
//!
//! Final scores are computed once, when a node is interned, from the already
//! interned children (see [`crate::eval`]).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::eval::FinalScores;
use crate::score::Score;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameId(u32);

impl GameId {
    pub fn index(self) -> u32 {
        self.0
    }

    pub(crate) fn entry(self) -> &'static Entry {
        store().inner.read().nodes[self.0 as usize]
    }

    pub fn score(self) -> Score {
        self.entry().score
    }

    pub fn left(self) -> &'static [GameId] {
        &self.entry().left
    }

    pub fn right(self) -> &'static [GameId] {
        &self.entry().right
    }

    /// Options for `player`.
    pub fn options(self, player: Player) -> &'static [GameId] {
        match player {
            Player::Left => self.left(),
            Player::Right => self.right(),
        }
    }

    pub fn is_leaf(self) -> bool {
        let e = self.entry();
        e.left.is_empty() && e.right.is_empty()
    }

    pub fn height(self) -> u32 {
        self.entry().height
    }

    pub(crate) fn finals(self) -> FinalScores {
        self.entry().finals
    }
}

impl fmt::Debug for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_game(*self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

pub(crate) struct Entry {
    left: Box<[GameId]>,
    score: Score,
    right: Box<[GameId]>,
    height: u32,
    fingerprint: u64,
    finals: FinalScores,
}

type Key = (Box<[GameId]>, Score, Box<[GameId]>);

#[derive(Default)]
struct Inner {
    nodes: Vec<&'static Entry>,
    index: HashMap<Key, GameId>,
}

struct Store {
    inner: RwLock<Inner>,
}

fn store() -> &'static Store {
    static STORE: OnceLock<Store> = OnceLock::new();
    STORE.get_or_init(|| Store {
        inner: RwLock::new(Inner::default()),
    })
}

/// Number of distinct nodes interned so far.
pub fn store_size() -> usize {
    store().inner.read().nodes.len()
}

fn mix(mut h: u64, v: u64) -> u64 {
    h ^= v.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb)
}

/// Deterministic total order on interned games: height, root score,
/// fingerprint, then a full structural comparison on the rare collision.
pub fn structural_cmp(a: GameId, b: GameId) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let (ea, eb) = (a.entry(), b.entry());
    ea.height
        .cmp(&eb.height)
        .then(ea.score.cmp(&eb.score))
        .then(ea.fingerprint.cmp(&eb.fingerprint))
        .then_with(|| cmp_lists(&ea.left, &eb.left))
        .then_with(|| cmp_lists(&ea.right, &eb.right))
}

fn cmp_lists(a: &[GameId], b: &[GameId]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = structural_cmp(*x, *y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

fn canonical(mut opts: Vec<GameId>) -> Box<[GameId]> {
    opts.sort_unstable();
    opts.dedup();
    opts.sort_by(|a, b| structural_cmp(*a, *b));
    opts.into_boxed_slice()
}

/// Interns a node whose option ids are known to be valid.
pub(crate) fn node(left: Vec<GameId>, score: Score, right: Vec<GameId>) -> GameId {
    let key: Key = (canonical(left), score, canonical(right));
    if let Some(id) = store().inner.read().index.get(&key) {
        return *id;
    }

    let children = key.0.iter().chain(key.2.iter());
    let height = children.clone().map(|c| c.height() + 1).max().unwrap_or(0);
    let mut fp = mix(score.numer() as u64, score.denom() as u64);
    for c in key.0.iter() {
        fp = mix(fp, c.entry().fingerprint);
    }
    fp = mix(fp, 0x5eed);
    for c in key.2.iter() {
        fp = mix(fp, c.entry().fingerprint);
    }
    let finals = FinalScores::from_children(score, &key.0, &key.2);

    let mut inner = store().inner.write();
    if let Some(id) = inner.index.get(&key) {
        return *id;
    }
    let id = GameId(u32::try_from(inner.nodes.len()).expect("game store exhausted"));
    let entry: &'static Entry = Box::leak(Box::new(Entry {
        left: key.0.clone(),
        score,
        right: key.2.clone(),
        height,
        fingerprint: fp,
        finals,
    }));
    inner.nodes.push(entry);
    inner.index.insert(key, id);
    id
}

pub(crate) fn validate(ids: &[GameId]) -> Result<()> {
    let n = store().inner.read().nodes.len();
    match ids.iter().find(|g| g.0 as usize >= n) {
        Some(g) => Err(Error::UnknownGame(g.0)),
        None => Ok(()),
    }
}

/// Builds `{left | score | right}`. Option order and duplicates are
/// irrelevant.
pub fn make_game(left: &[GameId], score: Score, right: &[GameId]) -> Result<GameId> {
    validate(left)?;
    validate(right)?;
    Ok(node(left.to_vec(), score, right.to_vec()))
}

/// The leaf `{.|score|.}`.
pub fn number(score: Score) -> GameId {
    node(Vec::new(), score, Vec::new())
}

fn map_tree(
    g: GameId,
    memo: &mut HashMap<GameId, GameId>,
    f: &mut impl FnMut(Vec<GameId>, Score, Vec<GameId>) -> GameId,
) -> GameId {
    if let Some(r) = memo.get(&g) {
        return *r;
    }
    let left = g.left().iter().map(|c| map_tree(*c, memo, f)).collect();
    let right = g.right().iter().map(|c| map_tree(*c, memo, f)).collect();
    let r = f(left, g.score(), right);
    memo.insert(g, r);
    r
}

/// `-G = {-G^R | -G^S | -G^L}`.
pub fn negate(g: GameId) -> GameId {
    map_tree(g, &mut HashMap::new(), &mut |l, s, r| node(r, -s, l))
}

/// Adds `c` to every node score.
pub fn shift(g: GameId, c: Score) -> GameId {
    if c.is_zero() {
        return g;
    }
    map_tree(g, &mut HashMap::new(), &mut |l, s, r| node(l, s + c, r))
}

/// Negates every node score while keeping Left and Right options in place.
pub fn reverse(g: GameId) -> GameId {
    map_tree(g, &mut HashMap::new(), &mut |l, s, r| node(l, -s, r))
}

/// Every distinct node reachable from `g`, including `g`.
pub fn subgames(g: GameId) -> Vec<GameId> {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![g];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        if seen.insert(x) {
            out.push(x);
            stack.extend(x.left().iter().chain(x.right()).copied());
        }
    }
    out
}

/// Largest absolute node score in the tree.
pub fn max_abs_score(g: GameId) -> Score {
    subgames(g)
        .into_iter()
        .map(|x| x.score().abs())
        .max()
        .unwrap_or(Score::ZERO)
}
