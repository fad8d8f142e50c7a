//! Sharded insert-if-absent store of packed keys with back-pointers.

use std::hash::{BuildHasher, Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

pub(crate) const ROOT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Node {
    pub parent: u32,
    pub mv: u32,
}

#[derive(Default)]
struct Shard {
    table: HashTable<u32>,
    bytes: Vec<u8>,
    offsets: Vec<u64>,
    nodes: Vec<Node>,
}

impl Shard {
    fn key(&self, local: u32) -> &[u8] {
        let a = self.offsets[local as usize] as usize;
        let b = self.offsets.get(local as usize + 1).map_or(self.bytes.len(), |&o| o as usize);
        &self.bytes[a..b]
    }
}

pub(crate) struct KeyStore {
    shards: Vec<Mutex<Shard>>,
    len: AtomicUsize,
}

fn hash_key(key: &[u8]) -> u64 {
    let mut h = FxBuildHasher.build_hasher();
    key.hash(&mut h);
    h.finish()
}

impl KeyStore {
    pub fn new(shards: usize) -> Self {
        let shards = shards.clamp(1, 256);
        KeyStore { shards: (0..shards).map(|_| Mutex::new(Shard::default())).collect(), len: AtomicUsize::new(0) }
    }

    pub fn len(&self) -> usize {
        self.len.load(Ordering::Relaxed)
    }

    fn shard_of(&self, hash: u64) -> usize {
        ((hash >> 40) % self.shards.len() as u64) as usize
    }

    fn global(&self, shard: usize, local: u32) -> u32 {
        local * self.shards.len() as u32 + shard as u32
    }

    fn split(&self, id: u32) -> (usize, u32) {
        let n = self.shards.len() as u32;
        ((id % n) as usize, id / n)
    }

    /// Inserts `key` unless present; returns the new id, or `None` if the
    /// key was already stored.
    pub fn insert(&self, key: &[u8], node: Node) -> Option<u32> {
        let hash = hash_key(key);
        let sid = self.shard_of(hash);
        let mut guard = self.shards[sid].lock().expect("store lock poisoned");
        let shard = &mut *guard;
        if shard.table.find(hash, |&l| shard_key(&shard.bytes, &shard.offsets, l) == key).is_some() {
            return None;
        }
        let local = shard.nodes.len() as u32;
        shard.offsets.push(shard.bytes.len() as u64);
        shard.bytes.extend_from_slice(key);
        shard.nodes.push(node);
        let (bytes, offsets) = (&shard.bytes, &shard.offsets);
        shard.table.insert_unique(hash, local, |&l| hash_key(shard_key(bytes, offsets, l)));
        drop(guard);
        self.len.fetch_add(1, Ordering::Relaxed);
        Some(self.global(sid, local))
    }

    pub fn find(&self, key: &[u8]) -> Option<u32> {
        let hash = hash_key(key);
        let sid = self.shard_of(hash);
        let shard = self.shards[sid].lock().expect("store lock poisoned");
        let local = *shard.table.find(hash, |&l| shard.key(l) == key)?;
        Some(self.global(sid, local))
    }

    pub fn key(&self, id: u32) -> Vec<u8> {
        let (sid, local) = self.split(id);
        self.shards[sid].lock().expect("store lock poisoned").key(local).to_vec()
    }

    pub fn node(&self, id: u32) -> Node {
        let (sid, local) = self.split(id);
        self.shards[sid].lock().expect("store lock poisoned").nodes[local as usize]
    }

    /// Moves from the root to `id`, in order.
    pub fn path(&self, mut id: u32) -> Vec<u32> {
        let mut moves = Vec::new();
        loop {
            let n = self.node(id);
            if n.parent == ROOT {
                break;
            }
            moves.push(n.mv);
            id = n.parent;
        }
        moves.reverse();
        moves
    }
}

fn shard_key<'a>(bytes: &'a [u8], offsets: &[u64], local: u32) -> &'a [u8] {
    let a = offsets[local as usize] as usize;
    let b = offsets.get(local as usize + 1).map_or(bytes.len(), |&o| o as usize);
    &bytes[a..b]
}
