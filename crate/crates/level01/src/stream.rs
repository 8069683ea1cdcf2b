//! Lazy, memoizing streams: the backtracking substrate.
//!
//! A stream cell holds either an unevaluated thunk or its forced value; a
//! thunk runs at most once and the cell is permanently forced afterwards.
//! A thunk that fails leaves the cell delayed, so forcing can be retried —
//! in practice engine errors abort the whole query anyway.

use std::cell::RefCell;
use std::rc::Rc;

type Thunk<T, E> = Rc<dyn Fn() -> Result<T, E>>;

enum State<T, E> {
    Delayed(Thunk<T, E>),
    Forced(T),
}

pub struct Cell<T, E> {
    state: RefCell<State<T, E>>,
}

impl<T: Clone, E> Cell<T, E> {
    pub fn delay(f: impl Fn() -> Result<T, E> + 'static) -> Cell<T, E> {
        Cell {
            state: RefCell::new(State::Delayed(Rc::new(f))),
        }
    }

    pub fn forced(v: T) -> Cell<T, E> {
        Cell {
            state: RefCell::new(State::Forced(v)),
        }
    }

    pub fn force(&self) -> Result<T, E> {
        let thunk = match &*self.state.borrow() {
            State::Forced(v) => return Ok(v.clone()),
            State::Delayed(f) => f.clone(),
        };
        // borrow released before the thunk runs
        let v = thunk()?;
        *self.state.borrow_mut() = State::Forced(v.clone());
        Ok(v)
    }
}

pub enum Step<T, E> {
    Empty,
    Cons(T, Stream<T, E>),
}

impl<T: Clone, E> Clone for Step<T, E> {
    fn clone(&self) -> Self {
        match self {
            Step::Empty => Step::Empty,
            Step::Cons(h, t) => Step::Cons(h.clone(), t.clone()),
        }
    }
}

/// A memoized stream: finite prefixes are stable under re-traversal.
pub struct Stream<T, E> {
    cell: Rc<Cell<Step<T, E>, E>>,
}

impl<T, E> Clone for Stream<T, E> {
    fn clone(&self) -> Self {
        Stream {
            cell: self.cell.clone(),
        }
    }
}

impl<T: Clone + 'static, E: Clone + 'static> Stream<T, E> {
    pub fn empty() -> Stream<T, E> {
        Stream {
            cell: Rc::new(Cell::forced(Step::Empty)),
        }
    }

    pub fn singleton(v: T) -> Stream<T, E> {
        Stream::cons(v, Stream::empty())
    }

    pub fn cons(head: T, tail: Stream<T, E>) -> Stream<T, E> {
        Stream {
            cell: Rc::new(Cell::forced(Step::Cons(head, tail))),
        }
    }

    pub fn err(e: E) -> Stream<T, E> {
        Stream::defer(move || Err(e.clone()))
    }

    /// A stream whose construction itself is deferred until first forced.
    pub fn defer(f: impl Fn() -> Result<Stream<T, E>, E> + 'static) -> Stream<T, E> {
        Stream {
            cell: Rc::new(Cell::delay(move || f()?.cell.force())),
        }
    }

    /// Force the first cell.
    pub fn next(&self) -> Result<Option<(T, Stream<T, E>)>, E> {
        match self.cell.force()? {
            Step::Empty => Ok(None),
            Step::Cons(h, t) => Ok(Some((h, t))),
        }
    }

    pub fn is_empty(&self) -> Result<bool, E> {
        Ok(self.next()?.is_none())
    }

    /// Concatenation; the second stream is not built until the first is
    /// exhausted.
    pub fn concat_lazy(self, rest: impl Fn() -> Result<Stream<T, E>, E> + 'static) -> Stream<T, E> {
        self.concat_rc(Rc::new(rest))
    }

    fn concat_rc(self, rest: Rc<dyn Fn() -> Result<Stream<T, E>, E>>) -> Stream<T, E> {
        Stream::defer(move || match self.next()? {
            None => rest(),
            Some((h, t)) => Ok(Stream::cons(h, t.concat_rc(rest.clone()))),
        })
    }

    pub fn map<U: Clone + 'static>(self, f: impl Fn(T) -> U + 'static) -> Stream<U, E> {
        self.map_rc(Rc::new(f))
    }

    fn map_rc<U: Clone + 'static>(self, f: Rc<dyn Fn(T) -> U>) -> Stream<U, E> {
        Stream::defer(move || match self.next()? {
            None => Ok(Stream::empty()),
            Some((h, t)) => Ok(Stream::cons(f(h), t.map_rc(f.clone()))),
        })
    }

    pub fn filter(self, pred: impl Fn(&T) -> bool + 'static) -> Stream<T, E> {
        self.filter_rc(Rc::new(pred))
    }

    fn filter_rc(self, pred: Rc<dyn Fn(&T) -> bool>) -> Stream<T, E> {
        Stream::defer(move || {
            let mut cur = self.clone();
            loop {
                match cur.next()? {
                    None => return Ok(Stream::empty()),
                    Some((h, t)) => {
                        if pred(&h) {
                            return Ok(Stream::cons(h, t.filter_rc(pred.clone())));
                        }
                        cur = t;
                    }
                }
            }
        })
    }

    pub fn flat_map(self, f: impl Fn(T) -> Stream<T, E> + 'static) -> Stream<T, E> {
        self.flat_map_rc(Rc::new(f))
    }

    fn flat_map_rc(self, f: Rc<dyn Fn(T) -> Stream<T, E>>) -> Stream<T, E> {
        Stream::defer(move || match self.next()? {
            None => Ok(Stream::empty()),
            Some((h, t)) => {
                let f2 = f.clone();
                Ok(f(h).concat_rc(Rc::new(move || Ok(t.clone().flat_map_rc(f2.clone())))))
            }
        })
    }

    /// Drain the whole stream into a vector.
    pub fn collect(&self) -> Result<Vec<T>, E> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while let Some((h, t)) = cur.next()? {
            out.push(h);
            cur = t;
        }
        Ok(out)
    }
}
