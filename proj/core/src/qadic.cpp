#include "hexlimit/qadic.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace hexlimit {
namespace {

u64 mask_bits(int k) {
  if (k <= 0) return 0;
  if (k >= 64) return ~u64{0};
  return (u64{1} << k) - 1;
}

// Inverse of an odd d modulo 2^64 by Newton iteration (5 steps double the
// correct low bits from 5 to >64).
u64 inv_odd_mod_pow2(u64 d) {
  u64 x = d;  // correct mod 2^3 already since d odd
  for (int i = 0; i < 5; ++i) x *= 2 - d * x;
  return x;
}

int mod3(i64 v) {
  int r = static_cast<int>(v % 3);
  return r < 0 ? r + 3 : r;
}

i64 parse_i64_token(std::string_view s, const char* what) {
  i64 value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    throw parse_error(std::string("bad integer in ") + what + ": '" + std::string(s) + "'");
  }
  return value;
}

Dyadic parse_rat_token(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Dyadic::exact(parse_i64_token(s, "rational"));
  }
  i64 num = parse_i64_token(s.substr(0, slash), "rational numerator");
  i64 den = parse_i64_token(s.substr(slash + 1), "rational denominator");
  if (den == 0) throw parse_error("zero denominator in rational");
  if (den % 2 == 0) throw parse_error("even denominator is not 2-adically integral: '" + std::string(s) + "'");
  return Dyadic::exact(num, den);
}

}  // namespace

Dyadic Dyadic::exact(i64 num, i64 den) {
  if (den == 0) throw std::invalid_argument("Dyadic::exact: zero denominator");
  if (den % 2 == 0) throw std::invalid_argument("Dyadic::exact: even denominator is not 2-adically integral");
  if (den < 0) {
    num = detail::checked_i64(-i128{num}, "Dyadic negate");
    den = detail::checked_i64(-i128{den}, "Dyadic negate");
  }
  i64 g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Dyadic d;
  d.exact_ = true;
  d.num_ = num;
  d.den_ = den;
  return d;
}

Dyadic Dyadic::residue(u64 value, int depth) {
  if (depth < 0 || depth > kMaxDepth) throw std::invalid_argument("Dyadic::residue: depth out of range");
  Dyadic d;
  d.exact_ = false;
  d.value_ = value & mask_bits(depth);
  d.depth_ = depth;
  return d;
}

i64 Dyadic::num() const {
  if (!exact_) throw form_error("exact numerator requested from residue-form value");
  return num_;
}

i64 Dyadic::den() const {
  if (!exact_) throw form_error("exact denominator requested from residue-form value");
  return den_;
}

u64 Dyadic::residue_mod(int k) const {
  if (k < 0 || k > kMaxDepth) throw std::invalid_argument("residue_mod: depth out of range");
  if (!exact_) {
    if (k > depth_) {
      throw depth_error("residue depth " + std::to_string(k) + " exceeds stored depth " +
                        std::to_string(depth_));
    }
    return value_ & mask_bits(k);
  }
  u64 n = static_cast<u64>(num_);  // two's complement = value mod 2^64
  u64 inv = inv_odd_mod_pow2(static_cast<u64>(den_));
  return (n * inv) & mask_bits(k);
}

bool Dyadic::is_integer() const {
  if (!exact_) throw form_error("integrality test requires exact form");
  return den_ == 1;
}

bool Dyadic::minus_is_integer(i64 rn, i64 rd) const {
  Dyadic diff = *this - Dyadic::exact(rn, rd);
  return diff.is_integer();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.exact_ && b.exact_) {
    i128 num = i128{a.num_} * b.den_ + i128{b.num_} * a.den_;
    i128 den = i128{a.den_} * b.den_;
    return Dyadic::exact(detail::checked_i64(num, "Dyadic add"), detail::checked_i64(den, "Dyadic add"));
  }
  int depth = std::min(a.depth(), b.depth());
  return Dyadic::residue(a.residue_mod(depth) + b.residue_mod(depth), depth);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator-(const Dyadic& a) {
  if (a.exact_) return Dyadic::exact(detail::checked_i64(-i128{a.num_}, "Dyadic negate"), a.den_);
  return Dyadic::residue(~a.value_ + 1, a.depth_);
}

Dyadic operator*(i64 c, const Dyadic& a) {
  if (a.exact_) {
    return Dyadic::exact(detail::checked_i64(i128{c} * a.num_, "Dyadic scale"), a.den_);
  }
  return Dyadic::residue(static_cast<u64>(c) * a.value_, a.depth_);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  if (a.exact_ && b.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
  int depth = std::min(a.depth(), b.depth());
  return a.residue_mod(depth) == b.residue_mod(depth);
}

QPoint residue(const QadicParam& q, int k) {
  if (k < 0 || k > 62) throw std::invalid_argument("residue: depth must lie in [0, 62] for point form");
  return QPoint{static_cast<i64>(q.u.residue_mod(k)), static_cast<i64>(q.v.residue_mod(k))};
}

QPoint SConstants::s1_partial(int k) {
  if (k < -1 || k > 30) throw std::out_of_range("s1_partial: k must lie in [-1, 30]");
  if (k == -1) return QPoint{0, 0};
  i64 sum = ((i64{1} << (2 * (k + 1))) - 1) / 3;  // 1 + 4 + ... + 4^k
  return QPoint{sum, 0};
}

QPoint SConstants::s2_partial(int k) {
  QPoint s = s1_partial(k);
  return QPoint{0, s.m};
}

PbarElem PbarElem::from_p(PPoint x) {
  i64 z2 = detail::add_i64(x.p, detail::mul_i64(2, x.q));
  return PbarElem{Dyadic::exact(detail::checked_i64(-i128{x.q}, "PbarElem")), mod3(z2), Dyadic::exact(z2)};
}

PbarElem PbarElem::from_qbar(const QadicParam& q) {
  return PbarElem{q.u - 2 * q.v, 0, 3 * q.v};
}

PbarElem operator+(const PbarElem& a, const PbarElem& b) {
  return PbarElem{a.e1 + b.e1, mod3(a.t + b.t), a.e2 + b.e2};
}

PbarElem operator-(const PbarElem& a, const PbarElem& b) {
  return PbarElem{a.e1 - b.e1, mod3(a.t - b.t), a.e2 - b.e2};
}

PbarElem operator*(i64 c, const PbarElem& a) {
  return PbarElem{c * a.e1, mod3(mod3(c) * a.t), c * a.e2};
}

bool PbarElem::is_zero_mod(int depth) const {
  return e1.residue_mod(depth) == 0 && t == 0 && e2.residue_mod(depth) == 0;
}

bool PbarElem::equal_mod(const PbarElem& other, int depth) const {
  // Componentwise residue comparison (not subtraction): the difference of two
  // near-2^63 exact values can overflow even when both residues are fine.
  return e1.residue_mod(depth) == other.e1.residue_mod(depth) && t == other.t &&
         e2.residue_mod(depth) == other.e2.residue_mod(depth);
}

bool lemma_s_check(int k) {
  if (k < 0 || k > 30) throw std::out_of_range("lemma_s_check: k must lie in [0, 30]");
  const int depth = 2 * k + 2;
  const PPoint w1{1, 0};
  const PPoint w2{0, 1};
  const i64 pow4k = i64{1} << (2 * k);

  auto embed_q = [](QPoint x) { return PbarElem::from_qbar(QadicParam::from_q(x)); };

  // 2^(2k) * w1 = w1 + s2_partial(k-1) + 2*s1_partial(k-1), exactly in P.
  PbarElem lhs1 = PbarElem::from_p(PPoint{pow4k, 0});
  PbarElem rhs1 = PbarElem::from_p(w1) + embed_q(SConstants::s2_partial(k - 1) + 2 * SConstants::s1_partial(k - 1));
  if (!lhs1.equal_mod(rhs1, depth)) return false;

  // 2^(2k+1) * w1 = w2 + s1_partial(k) + 2*s2_partial(k-1).
  PbarElem lhs2 = PbarElem::from_p(PPoint{2 * pow4k, 0});
  PbarElem rhs2 = PbarElem::from_p(w2) + embed_q(SConstants::s1_partial(k) + 2 * SConstants::s2_partial(k - 1));
  if (!lhs2.equal_mod(rhs2, depth)) return false;

  // Index-swapped forms.
  PbarElem lhs3 = PbarElem::from_p(PPoint{0, pow4k});
  PbarElem rhs3 = PbarElem::from_p(w2) + embed_q(SConstants::s1_partial(k - 1) + 2 * SConstants::s2_partial(k - 1));
  if (!lhs3.equal_mod(rhs3, depth)) return false;

  PbarElem lhs4 = PbarElem::from_p(PPoint{0, 2 * pow4k});
  PbarElem rhs4 = PbarElem::from_p(w1) + embed_q(SConstants::s2_partial(k) + 2 * SConstants::s1_partial(k - 1));
  if (!lhs4.equal_mod(rhs4, depth)) return false;

  // The finite sums agree with the limits s1, s2 to exactly this depth.
  PbarElem s1_limit = PbarElem::from_qbar(SConstants::s1());
  PbarElem s2_limit = PbarElem::from_qbar(SConstants::s2());
  if (!s1_limit.equal_mod(embed_q(SConstants::s1_partial(k)), depth)) return false;
  if (!s2_limit.equal_mod(embed_q(SConstants::s2_partial(k)), depth)) return false;
  return true;
}

bool torsion_check(int max_depth) {
  if (max_depth < 1 || max_depth > Dyadic::kMaxDepth) {
    throw std::out_of_range("torsion_check: depth must lie in [1, 64]");
  }
  PbarElem t1 = PbarElem::from_p(PPoint{1, 0}) + PbarElem::from_qbar(SConstants::s2() + 2 * SConstants::s1());
  PbarElem t2 = PbarElem::from_p(PPoint{0, 1}) + PbarElem::from_qbar(SConstants::s1() + 2 * SConstants::s2());
  for (int depth = 1; depth <= max_depth; ++depth) {
    if (!(3 * t1).is_zero_mod(depth)) return false;
    if (!(3 * t2).is_zero_mod(depth)) return false;
    if (t1.is_zero_mod(depth)) return false;  // genuinely torsion, not zero
    if (t2.is_zero_mod(depth)) return false;
  }
  return true;
}

std::string SingularClass::to_string() const {
  switch (kind) {
    case Kind::CHT:
      return "CHT";
    case Kind::ICwL:
      return branch == Branch::Up ? "ICwL(up)" : "ICwL(down)";
    case Kind::IaL:
      return std::string("IaL(") + hexlimit::to_string(adir) + ")";
    case Kind::IwL:
      return std::string("IwL(") + hexlimit::to_string(wdir) + ")";
    case Kind::GenericToDepth:
      if (generic_depth < 0) return "Generic";
      return "GenericToDepth(" + std::to_string(generic_depth) + ")";
  }
  return "?";
}

SingularClass classify(const QadicParam& q) {
  if (!q.is_exact()) {
    throw form_error("classification requires an exact parameter; a finite residue is only generic to its depth");
  }
  SingularClass c;
  const Dyadic& u = q.u;
  const Dyadic& v = q.v;
  if (u.is_integer() && v.is_integer()) {
    c.kind = SingularClass::Kind::CHT;
    c.fiber = 12;
    return c;
  }
  if (u.minus_is_integer(2, 3) && v.minus_is_integer(1, 3)) {
    c.kind = SingularClass::Kind::ICwL;
    c.branch = SingularClass::Branch::Up;
    c.fiber = 6;
    return c;
  }
  if (u.minus_is_integer(1, 3) && v.minus_is_integer(2, 3)) {
    c.kind = SingularClass::Kind::ICwL;
    c.branch = SingularClass::Branch::Down;
    c.fiber = 6;
    return c;
  }
  if (v.is_integer()) {
    c.kind = SingularClass::Kind::IaL;
    c.adir = ADir::A1;
    c.fiber = 2;
    return c;
  }
  if (u.is_integer()) {
    c.kind = SingularClass::Kind::IaL;
    c.adir = ADir::A2;
    c.fiber = 2;
    return c;
  }
  if ((u - v).is_integer()) {
    c.kind = SingularClass::Kind::IaL;
    c.adir = ADir::A12;
    c.fiber = 2;
    return c;
  }
  if ((u - 2 * v).is_integer()) {
    c.kind = SingularClass::Kind::IwL;
    c.wdir = WDir::W1;
    c.fiber = 2;
    return c;
  }
  if ((2 * u - v).is_integer()) {
    c.kind = SingularClass::Kind::IwL;
    c.wdir = WDir::W2;
    c.fiber = 2;
    return c;
  }
  if ((u + v).is_integer()) {
    c.kind = SingularClass::Kind::IwL;
    c.wdir = WDir::W21;
    c.fiber = 2;
    return c;
  }
  c.kind = SingularClass::Kind::GenericToDepth;
  c.generic_depth = -1;
  c.fiber = 1;
  return c;
}

std::optional<PPoint> nonorientable_point(const QadicParam& q) {
  SingularClass c = classify(q);
  if (c.kind != SingularClass::Kind::ICwL) return std::nullopt;
  const bool up = c.branch == SingularClass::Branch::Up;
  Dyadic du = q.u - Dyadic::exact(up ? 2 : 1, 3);
  Dyadic dv = q.v - Dyadic::exact(up ? 1 : 2, 3);
  QPoint y{du.num(), dv.num()};  // both integers by the class test
  PPoint base = up ? PPoint{1, 0} : PPoint{0, 1};
  return base + to_p(y);
}

QadicParam parse_qspec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw parse_error("q-spec missing scheme prefix: '" + spec + "'");
  std::string scheme = spec.substr(0, colon);
  std::string body = spec.substr(colon + 1);

  if (scheme == "rat") {
    auto comma = body.find(',');
    if (comma == std::string::npos) throw parse_error("rat: expects two comma-separated rationals");
    return {parse_rat_token(std::string_view(body).substr(0, comma)),
            parse_rat_token(std::string_view(body).substr(comma + 1))};
  }
  if (scheme == "res") {
    // K=<k>;u=<int>;v=<int>
    i64 k = -1;
    std::optional<i64> uval, vval;
    std::stringstream ss(body);
    std::string field;
    while (std::getline(ss, field, ';')) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw parse_error("res: field without '=': '" + field + "'");
      std::string key = field.substr(0, eq);
      i64 val = parse_i64_token(std::string_view(field).substr(eq + 1), "res field");
      if (key == "K") {
        k = val;
      } else if (key == "u") {
        uval = val;
      } else if (key == "v") {
        vval = val;
      } else {
        throw parse_error("res: unknown field '" + key + "'");
      }
    }
    if (k < 0 || k > Dyadic::kMaxDepth || !uval || !vval) {
      throw parse_error("res: requires K=<depth in [0,64]>;u=<int>;v=<int>");
    }
    return {Dyadic::residue(static_cast<u64>(*uval), static_cast<int>(k)),
            Dyadic::residue(static_cast<u64>(*vval), static_cast<int>(k))};
  }
  if (scheme == "cht") {
    auto comma = body.find(',');
    if (comma == std::string::npos) throw parse_error("cht: expects <m>,<n>");
    i64 m = parse_i64_token(std::string_view(body).substr(0, comma), "cht m");
    i64 n = parse_i64_token(std::string_view(body).substr(comma + 1), "cht n");
    return QadicParam::from_q(QPoint{m, n});
  }
  if (scheme == "icwl") {
    std::string branch = body;
    QPoint offset{0, 0};
    auto plus = body.find('+');
    if (plus != std::string::npos) {
      branch = body.substr(0, plus);
      std::string rest = body.substr(plus + 1);
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw parse_error("icwl: offset expects <m>,<n>");
      offset.m = parse_i64_token(std::string_view(rest).substr(0, comma), "icwl m");
      offset.n = parse_i64_token(std::string_view(rest).substr(comma + 1), "icwl n");
    }
    QadicParam base;
    if (branch == "up") {
      base = {Dyadic::exact(2, 3), Dyadic::exact(1, 3)};
    } else if (branch == "down") {
      base = {Dyadic::exact(1, 3), Dyadic::exact(2, 3)};
    } else {
      throw parse_error("icwl: branch must be 'up' or 'down'");
    }
    return base + QadicParam::from_q(offset);
  }
  throw parse_error("unknown q-spec scheme '" + scheme + "'");
}

std::string format_qspec(const QadicParam& q) {
  std::ostringstream os;
  if (q.is_exact()) {
    os << "rat:" << q.u.num() << "/" << q.u.den() << "," << q.v.num() << "/" << q.v.den();
  } else {
    int k = q.depth();
    os << "res:K=" << k << ";u=" << q.u.residue_mod(k) << ";v=" << q.v.residue_mod(k);
  }
  return os.str();
}

}  // namespace hexlimit
