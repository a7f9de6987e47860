//! Small internal helpers shared by the hot paths.

use rustc_hash::FxHasher;
use std::hash::BuildHasherDefault;

/// Hash map with a fast non-cryptographic hasher. Memoization tables key on
/// pointers or pre-hashed structures, so SipHash buys nothing here.
pub(crate) type FastMap<K, V> = std::collections::HashMap<K, V, BuildHasherDefault<FxHasher>>;

pub(crate) type FastSet<K> = std::collections::HashSet<K, BuildHasherDefault<FxHasher>>;
