#include "algebroid/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "algebroid/error.hpp"

namespace algebroid {

Chart::Chart(std::size_t dimension) {
  labels_.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) labels_.push_back("x" + std::to_string(i + 1));
}

Chart::Chart(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw Error(ErrorKind::InvalidInput, "chart labels must be distinct");
}

int Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<int>(i);
  return -1;
}

//------------------------------------------------------------------------------
// ScalarField
//------------------------------------------------------------------------------

ScalarField::ScalarField(std::size_t nvars, Terms terms) : nvars_(nvars), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != nvars_)
      throw Error(ErrorKind::DimensionMismatch, "monomial length differs from chart dimension");
    it = (it->second == 0.0) ? terms_.erase(it) : std::next(it);
  }
}

ScalarField ScalarField::constant(std::size_t nvars, double value) {
  ScalarField f(nvars);
  if (value != 0.0) f.terms_.emplace(Exponents(nvars, 0), value);
  return f;
}

ScalarField ScalarField::coordinate(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorKind::DimensionMismatch, "coordinate index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), 1.0);
}

ScalarField ScalarField::monomial(std::size_t nvars, Exponents exps, double coefficient) {
  if (exps.size() != nvars) throw Error(ErrorKind::DimensionMismatch, "monomial length mismatch");
  ScalarField f(nvars);
  if (coefficient != 0.0) f.terms_.emplace(std::move(exps), coefficient);
  return f;
}

double ScalarField::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? 0.0 : it->second;
}

double ScalarField::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::uint32_t ScalarField::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

bool ScalarField::is_constant() const { return total_degree() == 0; }

double ScalarField::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(point.size()) +
                                                  " coordinates, chart has " + std::to_string(nvars_));
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double v = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

ScalarField ScalarField::partial(std::size_t index) const {
  if (index >= nvars_) throw Error(ErrorKind::DimensionMismatch, "derivative index out of range");
  ScalarField out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    const double factor = static_cast<double>(d[index]);
    d[index] -= 1;
    out.terms_[std::move(d)] += c * factor;
  }
  return out;
}

ScalarField ScalarField::partial(std::span<const std::size_t> indices) const {
  ScalarField out = *this;
  for (auto i : indices) out = out.partial(i);
  return out;
}

ScalarField ScalarField::pruned(double tol) const {
  ScalarField out(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) out.terms_.emplace(e, c);
  return out;
}

ScalarField ScalarField::embedded(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw Error(ErrorKind::DimensionMismatch, "embedding does not fit");
  ScalarField out(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents big(nvars, 0);
    std::copy(e.begin(), e.end(), big.begin() + static_cast<std::ptrdiff_t>(offset));
    out.terms_.emplace(std::move(big), c);
  }
  return out;
}

void ScalarField::check_compatible(const ScalarField& other) const {
  if (nvars_ != other.nvars_)
    throw Error(ErrorKind::DimensionMismatch, "fields live on charts of different dimension");
}

ScalarField ScalarField::operator-() const {
  ScalarField out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  a.check_compatible(b);
  ScalarField out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.terms_[e] += ca * cb;
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();)
    it = (it->second == 0.0) ? out.terms_.erase(it) : std::next(it);
  return out;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint32_t degree_of(const Exponents& e) {
  std::uint32_t s = 0;
  for (auto k : e) s += k;
  return s;
}

}  // namespace

std::string ScalarField::to_string(const Chart& chart) const {
  if (chart.dimension() != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "chart does not match field");
  if (terms_.empty()) return "0";

  std::vector<std::pair<Exponents, double>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    const auto dl = degree_of(l.first), dr = degree_of(r.first);
    if (dl != dr) return dl > dr;
    return l.first > r.first;
  });

  std::string out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const bool negative = c < 0.0;
    const double mag = std::abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string vars;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += chart.labels()[i];
      if (e[i] > 1) vars += "^" + std::to_string(e[i]);
    }
    if (vars.empty()) {
      out += format_number(mag);
    } else if (mag == 1.0) {
      out += vars;
    } else {
      out += format_number(mag) + "*" + vars;
    }
  }
  return out;
}

std::string ScalarField::to_string() const { return to_string(Chart(nvars_)); }

//------------------------------------------------------------------------------
// Parser
//------------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const Chart& chart, std::string_view text) : chart_(chart), text_(text) {}

  ScalarField parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    ScalarField result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(pos_) + " in \"" +
                                            std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarField expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    ScalarField acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  ScalarField term() {
    ScalarField acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  ScalarField factor() {
    ScalarField base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected non-negative integer exponent");
    unsigned power = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, power);
    if (ec != std::errc()) fail("exponent out of range");
    ScalarField result = ScalarField::constant(chart_.dimension(), 1.0);
    for (unsigned k = 0; k < power; ++k) result = result * base;
    return result;
  }

  ScalarField primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarField inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ScalarField number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
    if (ec != std::errc() || ptr == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return ScalarField::constant(chart_.dimension(), value);
  }

  ScalarField variable() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    const int index = chart_.index_of(name);
    if (index < 0)
      throw Error(ErrorKind::UnknownVariable, "'" + std::string(name) + "' is not a coordinate of a " +
                                                  std::to_string(chart_.dimension()) + "-dimensional chart");
    return ScalarField::coordinate(chart_.dimension(), static_cast<std::size_t>(index));
  }

  const Chart& chart_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse_field(const Chart& chart, std::string_view text) { return Parser(chart, text).parse(); }

double eval_partial(const ScalarField& f, std::span<const std::size_t> derivative,
                    std::span<const double> p) {
  if (p.size() != f.nvars())
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match the chart");
  return f.partial(derivative).evaluate(p);
}

}  // namespace algebroid
