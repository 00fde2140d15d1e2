use super::MackeyFunctor;
use crate::groups::{Group, Subgroup};
use crate::linalg::{fp, FpMatrix};

/// The constant functor `k`: restriction is the identity and transfer is
/// multiplication by the index.
#[derive(Clone, Debug)]
pub struct ConstantFunctor {
    p: u32,
}

impl ConstantFunctor {
    pub fn new(p: u32) -> Self {
        Self { p }
    }
}

impl MackeyFunctor for ConstantFunctor {
    fn name(&self) -> String {
        format!("constant F{}", self.p)
    }

    fn prime(&self) -> u32 {
        self.p
    }

    fn dim(&self, _g: &Group) -> usize {
        1
    }

    fn pullback(&self, _g: &Group, _h: &Group, _phi: &[usize]) -> FpMatrix {
        FpMatrix::identity(self.p, 1)
    }

    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
        FpMatrix::scalar(self.p, 1, fp::from_i64((g.order() / h.order()) as i64, self.p) as i64)
    }
}
