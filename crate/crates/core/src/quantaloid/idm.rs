use std::sync::Arc;

use crate::lattice::Elem;

use super::{Arrow, ObjId, Quantaloid};

/// The split-idempotent completion of a base quantaloid, together with the
/// bookkeeping that maps its arrows back to base arrows.
///
/// Objects are the idempotents `e: A -> A` of the base (ordered by base
/// object, then element id); an arrow `e -> f` is a base arrow `b` with
/// `b ∘ e = b = f ∘ b`, ordered as in the base. The identity on `e` is `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idm {
    base: Arc<Quantaloid>,
    completed: Arc<Quantaloid>,
    idempotents: Vec<Arrow>,
    /// `carriers[i * n + j][x]` is the base element behind arrow `x: i -> j`.
    carriers: Vec<Vec<Elem>>,
}

impl Idm {
    pub fn build(q: &Quantaloid) -> Idm {
        let idempotents: Vec<Arrow> = q
            .objects()
            .flat_map(|a| q.idempotents(a).expect("object exists"))
            .collect();
        let n = idempotents.len();
        let mut carriers = Vec::with_capacity(n * n);
        let mut homs = Vec::with_capacity(n * n);
        for e in &idempotents {
            for f in &idempotents {
                let (a, b) = (e.src, f.src);
                let carrier: Vec<Elem> = q
                    .hom(a, b)
                    .elements()
                    .filter(|&x| q.comp(a, a, b, x, e.elem) == x && q.comp(a, b, b, f.elem, x) == x)
                    .collect();
                homs.push(
                    q.hom(a, b)
                        .sub_join_closed(&carrier)
                        .expect("absorbed arrows are closed under joins"),
                );
                carriers.push(carrier);
            }
        }
        let names = idempotents
            .iter()
            .map(|e| {
                let elem = q.hom(e.src, e.src).name(e.elem);
                if q.n_objects() == 1 {
                    elem.to_string()
                } else {
                    format!("{}:{}", q.object_name(e.src), elem)
                }
            })
            .collect();
        let ids = (0..n)
            .map(|i| {
                carriers[i * n + i]
                    .iter()
                    .position(|&x| x == idempotents[i].elem)
                    .expect("an idempotent absorbs itself")
            })
            .collect();
        let completed = Quantaloid::from_fn(
            format!("idm:{}", q.name()),
            names,
            homs,
            ids,
            |i, j, k, g, f| {
                let (a, b, c) = (idempotents[i].src, idempotents[j].src, idempotents[k].src);
                let gf = q.comp(a, b, c, carriers[j * n + k][g], carriers[i * n + j][f]);
                carriers[i * n + k]
                    .iter()
                    .position(|&x| x == gf)
                    .expect("composites of absorbed arrows are absorbed")
            },
        )
        .expect("shapes are consistent by construction");
        Idm {
            base: Arc::new(q.clone()),
            completed: Arc::new(completed),
            idempotents,
            carriers,
        }
    }

    pub fn base(&self) -> &Arc<Quantaloid> {
        &self.base
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.completed
    }

    /// The base idempotent behind an object of the completion.
    pub fn idempotent(&self, o: ObjId) -> Arrow {
        self.idempotents[o.0]
    }

    /// The object of the completion standing for the base idempotent `e`.
    pub fn object_for(&self, e: Arrow) -> Option<ObjId> {
        self.idempotents.iter().position(|&x| x == e).map(ObjId)
    }

    /// Base element of the completion arrow `x: i -> j`.
    pub fn to_base(&self, i: ObjId, j: ObjId, x: Elem) -> Elem {
        self.carriers[i.0 * self.idempotents.len() + j.0][x]
    }

    /// Completion arrow `i -> j` for a base element, if it is absorbed by both idempotents.
    pub fn from_base(&self, i: ObjId, j: ObjId, b: Elem) -> Option<Elem> {
        self.carriers[i.0 * self.idempotents.len() + j.0]
            .iter()
            .position(|&x| x == b)
    }
}

/// The split-idempotent completion as a plain quantaloid.
pub fn build_idm(q: &Quantaloid) -> Quantaloid {
    Quantaloid::clone(&Idm::build(q).completed)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{n3, q2, q3};
    use super::super::validate_quantaloid;
    use super::*;

    #[test]
    fn idm_q3_is_rel_shape() {
        let idm = Idm::build(&q3());
        let q = idm.quantaloid();
        assert_eq!(q.object_names(), &["0", "m", "1"]);
        for i in q.objects() {
            for j in q.objects() {
                // hom(e, f) = { b ⊑ e ∧ f }
                let bound = i.0.min(j.0);
                let expected: Vec<Elem> = (0..=bound).collect();
                let got: Vec<Elem> = q.hom(i, j).elements().map(|x| idm.to_base(i, j, x)).collect();
                assert_eq!(got, expected);
            }
            assert_eq!(idm.to_base(i, i, q.identity(i)), i.0);
        }
        assert!(validate_quantaloid(q).is_ok());
    }

    #[test]
    fn idm_q2_homs() {
        let q = build_idm(&q2());
        assert_eq!(q.n_objects(), 2);
        assert_eq!(q.hom(ObjId(1), ObjId(1)).len(), 2);
        assert_eq!(q.hom(ObjId(0), ObjId(0)).len(), 1);
        assert_eq!(q.hom(ObjId(0), ObjId(1)).len(), 1);
        assert_eq!(q.hom(ObjId(1), ObjId(0)).len(), 1);
    }

    #[test]
    fn every_monad_splits_in_idm() {
        for base in [q2(), q3(), n3()] {
            let q = build_idm(&base);
            assert!(validate_quantaloid(&q).is_ok());
            for a in q.objects() {
                for t in q.monads(a).unwrap() {
                    assert!(q.split_monad(t).unwrap().is_some(), "{}", q.arrow_name(t));
                }
                // idempotents split as well
                for e in q.idempotents(a).unwrap() {
                    assert!(q.find_splitting(a, e.elem).is_some());
                }
            }
        }
    }

    #[test]
    fn idm_n3_splits_t_through_t() {
        let q = build_idm(&n3());
        assert_eq!(q.object_names(), &["0", "1", "t"]);
        let one = ObjId(1);
        let t_in_one = q.hom(one, one).find("t").unwrap();
        let s = q.split_monad(Arrow::endo(one, t_in_one)).unwrap().unwrap();
        assert_eq!(s.object, ObjId(2));
        assert_eq!(q.hom(one, ObjId(2)).name(s.f), "t");
        assert_eq!(q.hom(ObjId(2), one).name(s.u), "t");
    }

    #[test]
    fn identities_embed_fully_faithfully() {
        for base in [q2(), q3(), n3()] {
            let idm = Idm::build(&base);
            for a in base.objects() {
                for b in base.objects() {
                    let i = idm.object_for(Arrow::endo(a, base.identity(a))).unwrap();
                    let j = idm.object_for(Arrow::endo(b, base.identity(b))).unwrap();
                    let hom = idm.quantaloid().hom(i, j);
                    assert_eq!(hom.len(), base.hom(a, b).len());
                    for x in hom.elements() {
                        for y in hom.elements() {
                            assert_eq!(
                                hom.le(x, y),
                                base.hom(a, b).le(idm.to_base(i, j, x), idm.to_base(i, j, y))
                            );
                        }
                    }
                }
            }
        }
    }
}
