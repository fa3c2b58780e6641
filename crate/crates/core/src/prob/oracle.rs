use std::sync::Arc;

use super::{Comp, Value};

type Step<Q, R, S> = dyn Fn(S, Q) -> Comp<(R, S)> + Send + Sync;

/// A stateful oracle: a transition `(state, query) -> Comp (answer, state)`
/// and its initial state.
pub struct Oracle<Q, R, S> {
    step: Arc<Step<Q, R, S>>,
    init: S,
}

impl<Q, R, S: Clone> Clone for Oracle<Q, R, S> {
    fn clone(&self) -> Self {
        Oracle {
            step: self.step.clone(),
            init: self.init.clone(),
        }
    }
}

impl<Q: Value, R: Value, S: Value> Oracle<Q, R, S> {
    pub fn new(init: S, step: impl Fn(S, Q) -> Comp<(R, S)> + Send + Sync + 'static) -> Self {
        Oracle {
            step: Arc::new(step),
            init,
        }
    }

    pub fn init(&self) -> &S {
        &self.init
    }

    pub fn query(&self, state: S, q: Q) -> Comp<(R, S)> {
        (self.step)(state, q)
    }
}

type Body<Q, R, S, T> = dyn Fn(&Oracle<Q, R, S>, S) -> Comp<(T, S)> + Send + Sync;

/// A computation that may query an oracle with inputs `Q` and answers `R`.
/// It is interpreted against any oracle whose state type is `S`.
pub struct OracleComp<Q, R, S, T>(Arc<Body<Q, R, S, T>>);

impl<Q, R, S, T> Clone for OracleComp<Q, R, S, T> {
    fn clone(&self) -> Self {
        OracleComp(self.0.clone())
    }
}

impl<Q: Value, R: Value, S: Value, T: Value> OracleComp<Q, R, S, T> {
    pub fn ret(x: T) -> Self {
        Self::lift(Comp::ret(x))
    }

    /// An oracle-free computation; the oracle state passes through.
    pub fn lift(c: Comp<T>) -> Self {
        OracleComp(Arc::new(move |_, s: S| c.map(move |t| (t, s.clone()))))
    }

    pub fn map<U: Value>(
        &self,
        f: impl Fn(T) -> U + Send + Sync + 'static,
    ) -> OracleComp<Q, R, S, U> {
        let body = self.0.clone();
        let f = Arc::new(f);
        OracleComp(Arc::new(move |o, s| {
            let f = f.clone();
            body(o, s).map(move |(t, s)| (f(t), s))
        }))
    }

    pub fn bind<U: Value>(
        &self,
        f: impl Fn(T) -> OracleComp<Q, R, S, U> + Send + Sync + 'static,
    ) -> OracleComp<Q, R, S, U> {
        let body = self.0.clone();
        let f = Arc::new(f);
        OracleComp(Arc::new(move |o: &Oracle<Q, R, S>, s| {
            let f = f.clone();
            let o2 = o.clone();
            body(o, s).bind(move |(t, s)| f(t).run(&o2, s))
        }))
    }

    /// Runs against `oracle` starting from oracle state `state`.
    pub fn run(&self, oracle: &Oracle<Q, R, S>, state: S) -> Comp<(T, S)> {
        (self.0)(oracle, state)
    }
}

impl<Q: Value, R: Value, S: Value> OracleComp<Q, R, S, R> {
    /// A single oracle query.
    pub fn query(q: Q) -> Self {
        OracleComp(Arc::new(move |o: &Oracle<Q, R, S>, s| {
            o.query(s, q.clone())
        }))
    }
}

/// Replaces every query in `c` by the oracle's transition, threading the
/// oracle state from its initial value.
pub fn run_with_oracle<Q: Value, R: Value, S: Value, T: Value>(
    c: &OracleComp<Q, R, S, T>,
    oracle: &Oracle<Q, R, S>,
) -> Comp<(T, S)> {
    c.run(oracle, oracle.init().clone())
}
