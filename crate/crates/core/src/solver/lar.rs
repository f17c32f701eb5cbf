//! Latest appearance records: memory that turns a Muller condition over
//! colors into a parity condition.

/// Colors ordered from most to least recently visited.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lar(pub Vec<u8>);

impl Lar {
    pub fn new(colors: usize) -> Self {
        Lar((0..colors as u8).collect())
    }

    /// Moves `c` to the front and returns its previous position.
    pub fn visit(&mut self, c: u8) -> u8 {
        let h = self
            .0
            .iter()
            .position(|&x| x == c)
            .expect("color tracked by the record");
        self.0[..=h].rotate_right(1);
        h as u8
    }

    /// Bitmask of the first `len` colors.
    pub fn front_mask(&self, len: usize) -> u64 {
        self.0[..len].iter().fold(0, |m, &c| m | 1 << c)
    }
}

/// Priority of a step: `hit = None` for an uncolored position, otherwise the
/// position returned by [`Lar::visit`]; `accepting` takes a color bitmask.
pub fn lar_priority(lar_after: &Lar, hit: Option<u8>, mut accepting: impl FnMut(u64) -> bool) -> u32 {
    match hit {
        None => u32::from(!accepting(0)),
        Some(h) => {
            let h = u32::from(h);
            if accepting(lar_after.front_mask(h as usize + 1)) {
                2 * (h + 1)
            } else {
                2 * h + 1
            }
        }
    }
}
