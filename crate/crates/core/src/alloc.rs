use crate::cnf::Var;

/// Hands out fresh variables in increasing order.
///
/// Translations take an allocator from their caller so that several of them
/// can share one variable space without collisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarAllocator {
    next: u32,
}

impl VarAllocator {
    /// The first fresh variable will be `first`.
    pub fn starting_at(first: Var) -> VarAllocator {
        VarAllocator { next: first.index() }
    }

    /// Fresh variables start right after `max` (or at 1).
    pub fn after(max: Option<Var>) -> VarAllocator {
        VarAllocator { next: max.map_or(1, |v| v.index() + 1) }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var::new(self.next);
        self.next += 1;
        v
    }

    /// The variable the next call to [`fresh`](Self::fresh) returns.
    pub fn peek(&self) -> Var {
        Var::new(self.next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up() {
        let mut a = VarAllocator::after(Some(Var::new(3)));
        assert_eq!(a.fresh(), Var::new(4));
        assert_eq!(a.peek(), Var::new(5));
        assert_eq!(VarAllocator::after(None).fresh(), Var::new(1));
    }
}
