//! Class groups of imaginary quadratic orders by reduced-form enumeration.

use crate::abelian::FiniteAbelianGroup;
use crate::error::Result;
use crate::ideals::form::{reduced_forms, QuadForm};
use crate::ideals::FractionalIdeal;
use crate::quadratic::QuadOrder;

#[derive(Debug, Clone)]
pub struct ClassGroup {
    order: QuadOrder,
    forms: Vec<QuadForm>,
    group: FiniteAbelianGroup,
}

/// All reduced forms, composed through ideal multiplication; the principal
/// form has index 0.
pub fn class_group(disc: i64) -> Result<ClassGroup> {
    let order = QuadOrder::new(disc)?;
    let forms = reduced_forms(disc);
    let ideals: Vec<FractionalIdeal> = forms.iter().map(|f| f.to_ideal(order)).collect();
    let table: Vec<Vec<usize>> = ideals
        .iter()
        .map(|i| {
            ideals
                .iter()
                .map(|j| {
                    let f = QuadForm::from_ideal(&i.mul(j)).reduce();
                    forms.iter().position(|g| *g == f).expect("reduced forms are complete")
                })
                .collect()
        })
        .collect();
    let group = FiniteAbelianGroup::from_table(table, 0)
        .unwrap_or_else(|e| panic!("composition table for D = {disc} is not a group: {e}"));
    Ok(ClassGroup { order, forms, group })
}

impl ClassGroup {
    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn disc(&self) -> i64 {
        self.order.disc()
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn identity(&self) -> QuadForm {
        self.forms[0]
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.group.invariant_factors()
    }

    pub fn index_of(&self, f: &QuadForm) -> Option<usize> {
        let r = f.reduce();
        self.forms.iter().position(|g| *g == r)
    }

    /// Class of a fractional ideal.
    pub fn class_of(&self, ideal: &FractionalIdeal) -> usize {
        self.index_of(&QuadForm::from_ideal(ideal)).expect("ideal of this order")
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.group.op(i, j)
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.class_number())
            .find(|&j| self.group.op(i, j) == 0)
            .expect("group")
    }

    /// `i^k` for any integer `k`.
    pub fn pow(&self, i: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(i) } else { i };
        self.group.pow(base, k.unsigned_abs())
    }

    /// One primitive integral ideal per class.
    pub fn representatives(&self) -> Vec<FractionalIdeal> {
        self.forms.iter().map(|f| f.to_ideal(self.order)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::QuadNumber;

    #[test]
    fn small_class_numbers() {
        let expect = [(-3, 1, vec![]), (-4, 1, vec![]), (-20, 2, vec![2]), (-23, 3, vec![3]), (-47, 5, vec![5])];
        for (d, h, inv) in expect {
            let cg = class_group(d).unwrap();
            assert_eq!(cg.class_number(), h, "h({d})");
            assert_eq!(cg.invariant_factors(), inv, "structure of Cl({d})");
        }
        assert_eq!(class_group(-20).unwrap().forms(), &[QuadForm::new(1, 0, 5), QuadForm::new(2, 2, 3)]);
        assert_eq!(
            class_group(-23).unwrap().forms(),
            &[QuadForm::new(1, 1, 6), QuadForm::new(2, -1, 3), QuadForm::new(2, 1, 3)]
        );
    }

    #[test]
    fn non_cyclic_class_group() {
        // D = -84: Cl = Z/2 x Z/2
        let cg = class_group(-84).unwrap();
        assert_eq!(cg.class_number(), 4);
        assert_eq!(cg.invariant_factors(), vec![2, 2]);
    }

    #[test]
    fn classes_of_ideals() {
        let cg = class_group(-20).unwrap();
        let o = cg.order();
        let two = FractionalIdeal::principal(o, &QuadNumber::int(2, 0)).unwrap();
        assert_eq!(cg.class_of(&two), 0);
        let p2 = FractionalIdeal::primitive(o, 2, 1).unwrap();
        assert_eq!(cg.class_of(&p2), 1);
        assert_eq!(cg.class_of(&p2.inv()), 1);
        assert_eq!(cg.pow(1, -3), 1);
        assert!(class_group(-12).is_err());
    }
}
