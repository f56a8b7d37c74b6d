use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{MonomialOrder, OrderKind};

/// `k[x0, ..., x{n-1}]` with a fixed monomial order. The local ring at
/// `m = (x0, ..., x{n-1})` is modelled by this graded ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    num_vars: usize,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, num_vars: usize, order: MonomialOrder) -> Result<Arc<Self>> {
        if num_vars == 0 {
            return Err(Error::InvalidArgument(
                "a polynomial ring needs at least one variable".into(),
            ));
        }
        Ok(Arc::new(Self {
            field,
            num_vars,
            order,
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("x{i}")
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            num_vars: self.num_vars,
            characteristic: self.field.characteristic(),
            order: self.order.kind(),
        }
    }

    /// Same field and order with `extra` auxiliary variables in front,
    /// ordered so that they are eliminated first.
    pub(crate) fn with_elimination_block(&self, extra: usize) -> Arc<Self> {
        Arc::new(Self {
            field: self.field.clone(),
            num_vars: self.num_vars + extra,
            order: self.order.eliminating(extra),
        })
    }

    /// Same ring with module components `< count` ranked above the rest.
    pub(crate) fn with_module_block(&self, count: usize) -> Arc<Self> {
        Arc::new(Self {
            order: self.order.with_module_block(count),
            ..self.clone()
        })
    }

    /// Same field and order with a different number of variables.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<Arc<Self>> {
        Self::new(self.field.clone(), num_vars, self.order)
    }
}

/// Serializable summary of a ring: number of variables, characteristic
/// (0 for the rationals) and monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub num_vars: usize,
    pub characteristic: u64,
    pub order: OrderKind,
}
