#include "braidcat/functor.hpp"

#include <stdexcept>

namespace braidcat {

std::string to_string(MoveVerdict v) {
  switch (v) {
    case MoveVerdict::Plus: return "+1";
    case MoveVerdict::Minus: return "-1";
    case MoveVerdict::Inequivalent: return "inequivalent";
    case MoveVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

namespace {

int diagonal_index(const BimoduleObject& o) {
  for (std::size_t k = 0; k < o.size(); ++k)
    if (o[k].shape.kind == Kind::Diagonal) return static_cast<int>(k);
  return -1;
}

BraidWord slice(const BraidWord& w, int from, int to) {
  BraidWord out{w.strands, {}};
  out.letters.assign(w.letters.begin() + from, w.letters.begin() + to);
  return out;
}

// Letters of the affected window before and after a step at s.pos.
std::pair<int, int> window(const MovieStep& s) {
  switch (s.op) {
    case StepKind::R1: return s.insert ? std::pair{0, 2} : std::pair{2, 0};
    case StepKind::R2: return {2, 2};
    case StepKind::R3: return {3, 3};
    case StepKind::Birth: return {0, 1};
    case StepKind::Death: return {1, 0};
  }
  return {0, 0};
}

}  // namespace

Coeff diagonal_coefficient(const ChainMap& f) {
  if (f.shift() != 0) return 0;
  const int c = diagonal_index(f.source().term(0));
  const int r = diagonal_index(f.target().term(0));
  if (c < 0 || r < 0) return 0;
  const BimoduleMorphism m = f.component(0);
  const Vec* img = m.entry(r, c);
  if (!img) return 0;
  // Basis paths start with the idempotents; a central degree-0 image is
  // c * sum e_i, so the e_1 coordinate is c.
  return (*img)[0];
}

Functor::Functor(int n) : n_(n), cat_(n) {}

void Functor::check_word(const BraidWord& w) const {
  if (w.strands != n_ + 1)
    throw std::invalid_argument("braid on " + std::to_string(w.strands) + " strands needs A_" +
                                std::to_string(w.strands - 1) + ", not A_" + std::to_string(n_));
  w.validate();
}

ComplexPtr Functor::complex(const BraidWord& w) {
  check_word(w);
  if (auto it = complexes_.find(w.letters); it != complexes_.end()) return it->second;
  ComplexPtr out;
  if (w.letters.empty()) {
    out = std::make_shared<const ChainComplex>(unit_complex(cat_));
  } else {
    ComplexPtr head = complex(slice(w, 0, static_cast<int>(w.letters.size()) - 1));
    const int l = w.letters.back();
    const ChainComplex gen = l > 0 ? build_Ri(cat_, l) : build_Ri_prime(cat_, -l);
    out = std::make_shared<const ChainComplex>(tensor(cat_, *head, gen));
  }
  complexes_.emplace(w.letters, out);
  return out;
}

const Simplified& Functor::minimal(const BraidWord& w) {
  auto c = complex(w);
  auto it = minimal_.find(w.letters);
  if (it == minimal_.end())
    it = minimal_.emplace(w.letters, std::make_shared<const Simplified>(simplify(cat_, c))).first;
  return *it->second;
}

ChainMap Functor::type2_map(TypeTwo v, int i) {
  if (i < 1 || i > n_) throw std::invalid_argument("generator index out of range");
  const BraidWord empty{n_ + 1, {}};
  const bool positive_letter = v == TypeTwo::W1 || v == TypeTwo::W3;
  const BraidWord letter{n_ + 1, {positive_letter ? i : -i}};
  const bool from_unit = v == TypeTwo::W1 || v == TypeTwo::W4;
  ComplexPtr src = complex(from_unit ? empty : letter);
  ComplexPtr dst = complex(from_unit ? letter : empty);
  const bool is_delta = v == TypeTwo::W3 || v == TypeTwo::W4;
  ChainMap out(src, dst, is_delta ? 2 : 0);
  BimoduleMorphism m(src->term_ptr(0), dst->term_ptr(0), out.degree());
  m.add(diagonal_index(dst->term(0)), diagonal_index(src->term(0)),
        is_delta ? delta_image(cat_, i) : cat_.lattice(Shape::diagonal()).generator);
  out.set_component(0, std::move(m));
  return out;
}

ChainMap Functor::local_equivalence(const BraidWord& u, const BraidWord& u2) {
  if (auto it = local_.find({u.letters, u2.letters}); it != local_.end()) return it->second;
  auto eq = is_homotopy_equivalent(cat_, complex(u), complex(u2));
  if (!eq) throw std::runtime_error("no equivalence found between R(" + render(u) + ") and R(" + render(u2) + ")");
  ChainMap f = std::move(eq->forward);
  if (diagonal_coefficient(f) < 0) f = f.scaled(-1);
  local_.emplace(std::pair{u.letters, u2.letters}, f);
  return f;
}

ChainMap Functor::step_map(const BraidWord& before, const MovieStep& s) {
  const BraidWord after = apply_step(before, s);
  const auto [lb, la] = window(s);
  const int len = static_cast<int>(before.letters.size());
  const BraidWord tau1 = slice(before, 0, s.pos);
  const BraidWord tau2 = slice(before, s.pos + lb, len);
  const BraidWord u = slice(before, s.pos, s.pos + lb);
  const BraidWord u2 = slice(after, s.pos, s.pos + la);
  ChainMap local;
  switch (s.op) {
    case StepKind::Birth:
      local = type2_map(u2.letters[0] > 0 ? TypeTwo::W1 : TypeTwo::W4, std::abs(u2.letters[0]));
      break;
    case StepKind::Death:
      local = type2_map(u.letters[0] > 0 ? TypeTwo::W3 : TypeTwo::W2, std::abs(u.letters[0]));
      break;
    default: local = local_equivalence(u, u2);
  }
  ChainMap left = tensor(cat_, ChainMap::identity(cat_, complex(tau1)), local);
  return tensor(cat_, left, ChainMap::identity(cat_, complex(tau2)), complex(before), complex(after));
}

CobordismInvariant Functor::invariant(const BraidMovie& m) {
  const auto frames = m.frames();
  ComplexPtr src = complex(frames.front());
  ChainMap map = ChainMap::identity(cat_, src);
  for (std::size_t k = 0; k < m.steps.size(); ++k) map = compose(cat_, step_map(frames[k], m.steps[k]), map);
  return {src, complex(frames.back()), std::move(map), polarity(m)};
}

MoveCheck Functor::verify_move(const BraidMovie& m1, const BraidMovie& m2) {
  if (!(m1.start == m2.start) || !(m1.end() == m2.end()))
    throw std::invalid_argument("movies have different boundaries");
  MoveCheck out;
  try {
    const ChainMap f1 = invariant(m1).map;
    const ChainMap f2 = invariant(m2).map;
    out.degree1 = f1.degree();
    out.degree2 = f2.degree();
    const Simplified& s = minimal(m1.start);
    const Simplified& e = minimal(m1.end());
    auto reduce = [&](const ChainMap& f) { return compose(cat_, e.projection, compose(cat_, f, s.inclusion)); };
    if (f1.degree() != f2.degree()) {
      const bool null1 = find_null_homotopy(cat_, reduce(f1)).has_value();
      const bool null2 = find_null_homotopy(cat_, reduce(f2)).has_value();
      out.both_null = null1 && null2;
      out.verdict = out.both_null ? MoveVerdict::Plus : MoveVerdict::Inequivalent;
      out.note = "internal degrees differ";
      return out;
    }
    auto diff = find_null_homotopy(cat_, reduce(f2 - f1));
    auto sum = find_null_homotopy(cat_, reduce(f2 + f1));
    out.both_null = diff && sum;
    if (diff) {
      out.verdict = MoveVerdict::Plus;
      out.exact = f2 == f1;
      out.witness = std::move(diff);
    } else if (sum) {
      out.verdict = MoveVerdict::Minus;
      out.exact = f2 == f1.scaled(-1);
      out.witness = std::move(sum);
    } else {
      out.verdict = MoveVerdict::Inequivalent;
    }
  } catch (const std::overflow_error& ex) {
    out.verdict = MoveVerdict::Undecided;
    out.note = ex.what();
  }
  return out;
}

NonvanishingCertificate Functor::nonvanishing(const BraidMovie& m) {
  if (polarity(m).p_minus > 0) throw std::invalid_argument("movie has negative branch points");
  return {diagonal_coefficient(invariant(m).map)};
}

Move13Check move13_reader_check(Functor& F, int i) {
  const BimoduleCategory& cat = F.category();
  const ZigzagRing& ring = cat.ring();
  if (i < 1 || i + 1 > F.n()) throw std::invalid_argument("move 13 needs generators i and i+1");
  ComplexPtr X = F.complex(BraidWord{F.n() + 1, {-i, -(i + 1)}});
  Move13Check out;
  out.target_map = right_mult(cat, X, ring.x_element(i - 1) - ring.x_element(i + 1)) +
                   left_mult(cat, X, ring.x_element(i) - ring.x_element(i + 2));

  // gamma_{i+1} : A -> P_{i+1} (x) _{i+1}P{-2}, as a map of one-term complexes
  ComplexPtr unit = F.complex(BraidWord{F.n() + 1, {}});
  BimoduleObject q;
  q.summands.push_back({Shape::tensor(i + 1, i + 1), -2, {}});
  ChainComplex qc;
  qc.set_term(0, std::make_shared<const BimoduleObject>(std::move(q)));
  ComplexPtr Q = std::make_shared<const ChainComplex>(std::move(qc));
  ChainMap g(unit, Q, 0);
  BimoduleMorphism gm(unit->term_ptr(0), Q->term_ptr(0), 0);
  gm.add(0, 0, gamma_image(cat, i + 1));
  g.set_component(0, std::move(gm));
  out.rho2_unreduced = tensor(cat, g, ChainMap::identity(cat, X));
  const Simplified y = simplify(cat, out.rho2_unreduced.target_ptr());
  out.rho2 = compose(cat, y.projection, out.rho2_unreduced);

  auto solve = [&](const ChainMap& rho) {
    HomotopyConstraint constraint;
    for (const auto& [t, o] : X->terms()) constraint.post[t + 1] = rho.component(t);
    return find_null_homotopy(cat, out.target_map, &constraint);
  };
  out.unconstrained = find_null_homotopy(cat, out.target_map);
  out.constrained = solve(out.rho2);
  out.constrained_unreduced = solve(out.rho2_unreduced);
  return out;
}

}  // namespace braidcat
