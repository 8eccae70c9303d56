#include "frobtoric/forms.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "frobtoric/errors.hpp"

namespace frobtoric {

namespace mv {

int wedge_sign(std::uint32_t i, std::uint32_t j) {
  if (i & j) return 0;
  int inversions = 0;
  for (std::uint32_t rest = j; rest; rest &= rest - 1) {
    const auto bit = static_cast<std::uint32_t>(std::countr_zero(rest));
    inversions += std::popcount(i >> (bit + 1));
  }
  return inversions % 2 ? -1 : 1;
}

Multivector wedge(const Multivector& a, const Multivector& b, const PrimeField& f) {
  Multivector r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      const int s = wedge_sign(i, j);
      if (!s) continue;
      auto& slot = r[i | j];
      const auto v = f.mul(x, y);
      slot = s > 0 ? f.add(slot, v) : f.sub(slot, v);
    }
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

void axpy(Multivector& acc, std::uint32_t scale, const Multivector& x, const PrimeField& f) {
  for (const auto& [m, c] : x) {
    auto& slot = acc[m];
    slot = f.add(slot, f.mul(scale, c));
    if (!slot) acc.erase(m);
  }
}

Multivector contract(const std::vector<std::uint32_t>& lambda, const Multivector& a, const PrimeField& f) {
  Multivector r;
  for (const auto& [mask, c] : a) {
    int k = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++k) {
      const auto bit = static_cast<std::uint32_t>(std::countr_zero(rest));
      const auto l = lambda[bit];
      if (!l) continue;
      const auto v = f.mul(l, c);
      auto& slot = r[mask & ~(1u << bit)];
      slot = k % 2 ? f.sub(slot, v) : f.add(slot, v);
    }
  }
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

Multivector dlog_of(const LatticePoint& u, const PrimeField& f) {
  Multivector r;
  for (std::size_t i = 0; i < u.rank(); ++i) {
    const auto c = f.reduce(u[i]);
    if (c) r[1u << i] = c;
  }
  return r;
}

std::vector<std::uint32_t> basis_masks(std::size_t rank, int degree) {
  std::vector<std::uint32_t> out;
  if (degree < 0 || static_cast<std::size_t>(degree) > rank) return out;
  for (std::uint32_t m = 0; m < (1u << rank); ++m)
    if (std::popcount(m) == degree) out.push_back(m);
  return out;
}

}  // namespace mv

TorusForm::TorusForm(std::size_t rank, int degree, std::uint32_t p) : rank_(rank), degree_(degree), field_(p) {
  if (rank == 0 || rank > 16) throw InputError("torus rank out of range");
  if (degree < 0 || static_cast<std::size_t>(degree) > rank) throw InputError("form degree out of range");
}

void TorusForm::add_term(const LatticePoint& u, std::uint32_t mask, std::int64_t c) {
  add_term(u, Multivector{{mask, field_.reduce(c)}});
}

void TorusForm::add_term(const LatticePoint& u, const Multivector& w) {
  if (u.rank() != rank_) throw InputError("grade rank mismatch");
  for (const auto& [mask, c] : w) {
    if (std::popcount(mask) != degree_ || mask >> rank_) throw InputError("multivector of wrong degree");
    (void)c;
  }
  auto& slot = terms_[u];
  mv::axpy(slot, 1, w, field_);
  if (slot.empty()) terms_.erase(u);
}

void TorusForm::check_compatible(const TorusForm& o) const {
  if (rank_ != o.rank_ || degree_ != o.degree_ || !(field_ == o.field_))
    throw InputError("adding forms of different rank, degree or characteristic");
}

TorusForm TorusForm::operator+(const TorusForm& o) const {
  check_compatible(o);
  TorusForm r = *this;
  for (const auto& [u, w] : o.terms_) r.add_term(u, w);
  return r;
}

TorusForm TorusForm::operator-(const TorusForm& o) const { return *this + o.scaled(-1); }

TorusForm TorusForm::scaled(std::int64_t c) const {
  TorusForm r(rank_, degree_, prime());
  const auto s = field_.reduce(c);
  for (const auto& [u, w] : terms_) {
    Multivector x;
    mv::axpy(x, s, w, field_);
    r.add_term(u, x);
  }
  return r;
}

std::string TorusForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [u, w] : terms_)
    for (const auto& [mask, c] : w) {
      os << (first ? "" : " + ") << c << "*x^" << u << "*dlog{";
      bool f2 = true;
      for (std::size_t i = 0; i < rank_; ++i)
        if (mask >> i & 1) {
          os << (f2 ? "" : ",") << i + 1;
          f2 = false;
        }
      os << '}';
      first = false;
    }
  return os.str();
}

TorusForm d(const TorusForm& w) {
  if (static_cast<std::size_t>(w.degree()) == w.rank()) return TorusForm(w.rank(), w.degree(), w.prime());
  TorusForm r(w.rank(), w.degree() + 1, w.prime());
  for (const auto& [u, x] : w.terms()) r.add_term(u, mv::wedge(mv::dlog_of(u, w.field()), x, w.field()));
  return r;
}

TorusForm wedge(const TorusForm& a, const TorusForm& b) {
  if (a.rank() != b.rank() || a.prime() != b.prime()) throw InputError("wedge of incompatible forms");
  const int deg = a.degree() + b.degree();
  if (static_cast<std::size_t>(deg) > a.rank()) return TorusForm(a.rank(), static_cast<int>(a.rank()), a.prime());
  TorusForm r(a.rank(), deg, a.prime());
  for (const auto& [u, x] : a.terms())
    for (const auto& [v, y] : b.terms()) r.add_term(u + v, mv::wedge(x, y, a.field()));
  return r;
}

ChartData ChartData::of(const Fan& f, const RaySet& cone, const std::vector<std::int64_t>& divisor) {
  ChartData c;
  for (int r : cone) {
    c.rays.push_back(f.rays().at(static_cast<std::size_t>(r)));
    c.offsets.push_back(divisor.empty() ? 0 : divisor.at(static_cast<std::size_t>(r)));
  }
  return c;
}

std::size_t ChartData::rank() const { return rays.empty() ? 0 : rays.front().rank(); }

namespace {

// Linear functionals v_ρ mod p of the rays tight at u; nullopt if u violates
// some inequality.
std::optional<std::vector<std::vector<std::uint32_t>>> tight_functionals(const ChartData& chart,
                                                                          const LatticePoint& u,
                                                                          const PrimeField& f) {
  std::vector<std::vector<std::uint32_t>> tight;
  for (std::size_t i = 0; i < chart.rays.size(); ++i) {
    const auto v = dot(u, chart.rays[i]) + chart.offsets[i];
    if (v < 0) return std::nullopt;
    if (v == 0) {
      std::vector<std::uint32_t> l(u.rank());
      for (std::size_t j = 0; j < u.rank(); ++j) l[j] = f.reduce(chart.rays[i][j]);
      tight.push_back(std::move(l));
    }
  }
  return tight;
}

}  // namespace

std::optional<FpMatrix> membership_basis(const ChartData& chart, const LatticePoint& u, int degree,
                                         const PrimeField& f) {
  const std::size_t n = u.rank();
  const auto tight = tight_functionals(chart, u, f);
  if (!tight) return std::nullopt;
  FpMatrix w(n, n);
  if (tight->empty()) {
    for (std::size_t i = 0; i < n; ++i) w(i, i) = 1;
  } else {
    FpMatrix t(tight->size(), n);
    for (std::size_t i = 0; i < tight->size(); ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = (*tight)[i][j];
    w = nullspace(t, f);
  }
  const auto masks = mv::basis_masks(n, degree);
  std::vector<Multivector> vecs;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    Multivector m;
    for (std::size_t j = 0; j < n; ++j)
      if (w(i, j)) m[1u << j] = w(i, j);
    vecs.push_back(std::move(m));
  }
  const auto choose = mv::basis_masks(w.rows(), degree);
  FpMatrix out(choose.size(), masks.size());
  for (std::size_t r = 0; r < choose.size(); ++r) {
    Multivector acc{{0u, 1u}};
    for (std::size_t j = 0; j < w.rows(); ++j)
      if (choose[r] >> j & 1) acc = mv::wedge(acc, vecs[j], f);
    for (std::size_t c = 0; c < masks.size(); ++c) {
      const auto it = acc.find(masks[c]);
      if (it != acc.end()) out(r, c) = it->second;
    }
  }
  return out;
}

bool chart_membership(const TorusForm& w, const ChartData& chart) {
  for (const auto& [u, x] : w.terms()) {
    const auto tight = tight_functionals(chart, u, w.field());
    if (!tight) return false;
    for (const auto& l : *tight)
      if (!mv::contract(l, x, w.field()).empty()) return false;
  }
  return true;
}

TorusForm cartier(const TorusForm& w) {
  const auto p = static_cast<std::int64_t>(w.prime());
  TorusForm r(w.rank(), w.degree(), w.prime());
  for (const auto& [u, x] : w.terms()) {
    if (!std::all_of(u.coords().begin(), u.coords().end(), [&](std::int64_t c) { return c % p == 0; })) continue;
    LatticePoint v(u.rank());
    for (std::size_t i = 0; i < u.rank(); ++i) v[i] = u[i] / p;
    r.add_term(v, x);
  }
  return r;
}

TorusForm sigma_split(const TorusForm& w) {
  TorusForm r(w.rank(), w.degree(), w.prime());
  for (const auto& [u, x] : w.terms()) r.add_term(static_cast<std::int64_t>(w.prime()) * u, x);
  return r;
}

TorusForm duality_split(const TorusForm& w) {
  const std::size_t n = w.rank();
  const int i = w.degree();
  const auto& f = w.field();
  const auto unknowns = mv::basis_masks(n, i);
  const auto tests = mv::basis_masks(n, static_cast<int>(n) - i);
  const std::uint32_t top = (1u << n) - 1;

  FpMatrix pairing(tests.size(), unknowns.size());
  for (std::size_t k = 0; k < tests.size(); ++k)
    for (std::size_t j = 0; j < unknowns.size(); ++j) pairing(k, j) = f.reduce(mv::wedge_sign(tests[k], unknowns[j]));
  if (rank(pairing, f) != unknowns.size()) throw InternalError("degenerate wedge pairing in degree " + std::to_string(i));

  std::map<LatticePoint, std::vector<std::uint32_t>> rhs;
  for (std::size_t k = 0; k < tests.size(); ++k) {
    TorusForm z(n, static_cast<int>(n) - i, w.prime());
    z.add_term(LatticePoint(n), tests[k], 1);
    const auto value = cartier(wedge(sigma_split(z), w));
    for (const auto& [t, x] : value.terms()) {
      auto& b = rhs[t];
      b.resize(tests.size(), 0);
      const auto it = x.find(top);
      if (it != x.end()) b[k] = it->second;
    }
  }
  TorusForm r(n, i, w.prime());
  for (const auto& [t, b] : rhs) {
    bool ok = false;
    const auto s = solve(pairing, b, f, &ok);
    if (!ok) throw InternalError("pairing system inconsistent at grade " + t.str());
    for (std::size_t j = 0; j < unknowns.size(); ++j)
      if (s[j]) r.add_term(t, unknowns[j], s[j]);
  }
  return r;
}

namespace {

FpMatrix empty_rows(std::size_t cols) { return FpMatrix(0, cols); }

// Rows: images u♭ ∧ b for each row b of `basis` (coordinates of degree).
FpMatrix koszul_images(const FpMatrix& basis, const LatticePoint& u, int degree, const PrimeField& f) {
  const std::size_t n = u.rank();
  const auto src = mv::basis_masks(n, degree);
  const auto dst = mv::basis_masks(n, degree + 1);
  const auto ub = mv::dlog_of(u, f);
  FpMatrix out(basis.rows(), dst.size());
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    Multivector b;
    for (std::size_t c = 0; c < src.size(); ++c)
      if (basis(r, c)) b[src[c]] = basis(r, c);
    const auto img = mv::wedge(ub, b, f);
    for (std::size_t c = 0; c < dst.size(); ++c) {
      const auto it = img.find(dst[c]);
      if (it != img.end()) out(r, c) = it->second;
    }
  }
  return out;
}

}  // namespace

ZBSubspaces zb_subspaces(const ChartData& chart, const LatticePoint& u, int degree, const PrimeField& f) {
  const std::size_t n = u.rank();
  const auto width = mv::basis_masks(n, degree).size();
  auto member = membership_basis(chart, u, degree, f).value_or(empty_rows(width));

  // Cocycles: kernel of c ↦ Σ c_j u♭∧m_j, mapped back through the basis.
  FpMatrix cocycles = empty_rows(width);
  if (member.rows()) {
    const auto img = koszul_images(member, u, degree, f);
    FpMatrix t(img.cols(), img.rows());
    for (std::size_t i = 0; i < img.rows(); ++i)
      for (std::size_t j = 0; j < img.cols(); ++j) t(j, i) = img(i, j);
    const auto ker = nullspace(t, f);
    cocycles = ker.rows() ? row_space(ker.multiply(member, f), f) : empty_rows(width);
  }

  FpMatrix coboundaries = empty_rows(width);
  if (degree > 0) {
    const auto lower = membership_basis(chart, u, degree - 1, f);
    if (lower && lower->rows()) coboundaries = row_space(koszul_images(*lower, u, degree - 1, f), f);
  }
  return {std::move(member), std::move(cocycles), std::move(coboundaries)};
}

std::size_t cartier_target_dim(const ChartData& chart, const LatticePoint& u, int degree, const PrimeField& f) {
  const auto p = static_cast<std::int64_t>(f.p());
  LatticePoint v(u.rank());
  for (std::size_t i = 0; i < u.rank(); ++i) {
    if (u[i] % p) return 0;
    v[i] = u[i] / p;
  }
  const auto b = membership_basis(chart, v, degree, f);
  return b ? b->rows() : 0;
}

TorusForm random_chart_form(const ChartData& chart, int degree, const PrimeField& f, std::int64_t radius,
                            std::size_t terms, std::mt19937_64& rng) {
  const std::size_t n = chart.rank();
  TorusForm out(n, degree, f.p());
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  std::uniform_int_distribution<std::uint32_t> digit(0, f.p() - 1);
  const auto masks = mv::basis_masks(n, degree);
  std::size_t added = 0;
  for (std::size_t attempt = 0; attempt < 64 * terms && added < terms; ++attempt) {
    LatticePoint u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = coord(rng);
    const auto basis = membership_basis(chart, u, degree, f);
    if (!basis || basis->rows() == 0) continue;
    Multivector w;
    for (std::size_t r = 0; r < basis->rows(); ++r) {
      const auto c = digit(rng);
      for (std::size_t j = 0; j < masks.size(); ++j)
        if ((*basis)(r, j)) {
          auto& slot = w[masks[j]];
          slot = f.add(slot, f.mul(c, (*basis)(r, j)));
        }
    }
    std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
    if (w.empty()) continue;
    out.add_term(u, w);
    ++added;
  }
  return out;
}

}  // namespace frobtoric
