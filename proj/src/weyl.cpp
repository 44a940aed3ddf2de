// Copyright 2026 The contextlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "contextlab/weyl.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace contextlab {
namespace {

int mod(long long v, long long m) { return static_cast<int>(((v % m) + m) % m); }

void require_same_shape(const WeylOperator& a, const WeylOperator& b) {
  if (a.sites() != b.sites() || a.dim() != b.dim()) {
    throw IncompatibleOperands("Weyl operands differ: (n=" + std::to_string(a.sites()) +
                               ", d=" + std::to_string(a.dim()) + ") vs (n=" +
                               std::to_string(b.sites()) + ", d=" + std::to_string(b.dim()) +
                               ")");
  }
}

}  // namespace

WeylOperator::WeylOperator(int sites, int dim)
    : WeylOperator(dim, std::vector<int>(sites < 0 ? 0 : sites, 0),
                   std::vector<int>(sites < 0 ? 0 : sites, 0), 0) {
  if (sites < 0) throw ContractViolation("negative site count");
}

WeylOperator::WeylOperator(int dim, std::vector<int> x, std::vector<int> z, int phase)
    : d_(dim), x_(std::move(x)), z_(std::move(z)), phase_(0) {
  if (d_ < 2) throw ContractViolation("qudit dimension must be >= 2");
  if (x_.size() != z_.size()) throw IncompatibleOperands("x and z vectors differ in length");
  for (auto& e : x_) e = mod(e, d_);
  for (auto& e : z_) e = mod(e, d_);
  phase_ = mod(phase, 2LL * d_);
}

WeylOperator WeylOperator::shift(int sites, int dim, int site, int power) {
  WeylOperator op(sites, dim);
  if (site < 0 || site >= sites) throw ContractViolation("site index out of range");
  op.x_[site] = mod(power, dim);
  return op;
}

WeylOperator WeylOperator::clock(int sites, int dim, int site, int power) {
  WeylOperator op(sites, dim);
  if (site < 0 || site >= sites) throw ContractViolation("site index out of range");
  op.z_[site] = mod(power, dim);
  return op;
}

WeylOperator WeylOperator::pauli_y(int sites, int site) {
  WeylOperator op(sites, 2);
  if (site < 0 || site >= sites) throw ContractViolation("site index out of range");
  op.x_[site] = 1;
  op.z_[site] = 1;
  op.phase_ = 1;
  return op;
}

bool WeylOperator::is_pure_phase() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] != 0 || z_[i] != 0) return false;
  }
  return true;
}

WeylOperator WeylOperator::times_phase(int tau_exponent) const {
  WeylOperator out = *this;
  out.phase_ = mod(static_cast<long long>(phase_) + tau_exponent, 2LL * d_);
  return out;
}

WeylOperator weyl_mul(const WeylOperator& a, const WeylOperator& b) {
  require_same_shape(a, b);
  const int d = a.dim();
  const int n = a.sites();
  std::vector<int> x(n), z(n);
  long long phase = static_cast<long long>(a.phase()) + b.phase();
  for (int s = 0; s < n; ++s) {
    // Z^{zA} X^{xB} = w^{-zA xB} X^{xB} Z^{zA}
    phase -= 2LL * a.z()[s] * b.x()[s];
    x[s] = a.x()[s] + b.x()[s];
    z[s] = a.z()[s] + b.z()[s];
  }
  return WeylOperator(d, std::move(x), std::move(z), mod(phase, 2LL * d));
}

WeylOperator weyl_dagger(const WeylOperator& a) {
  const int n = a.sites();
  std::vector<int> x(n), z(n);
  long long phase = -static_cast<long long>(a.phase());
  for (int s = 0; s < n; ++s) {
    // (X^x Z^z)^dag = Z^{-z} X^{-x} = w^{-zx} X^{-x} Z^{-z}
    phase -= 2LL * a.z()[s] * a.x()[s];
    x[s] = -a.x()[s];
    z[s] = -a.z()[s];
  }
  return WeylOperator(a.dim(), std::move(x), std::move(z), mod(phase, 2LL * a.dim()));
}

WeylOperator weyl_pow(const WeylOperator& a, long long k) {
  if (k < 0) return weyl_pow(weyl_dagger(a), -k);
  WeylOperator result(a.sites(), a.dim());
  WeylOperator base = a;
  while (k > 0) {
    if (k & 1) result = weyl_mul(result, base);
    base = weyl_mul(base, base);
    k >>= 1;
  }
  return result;
}

WeylOperator weyl_product(std::span<const WeylOperator> ops, int sites, int dim) {
  WeylOperator result(sites, dim);
  for (const auto& op : ops) result = weyl_mul(result, op);
  return result;
}

int symplectic_product(const WeylOperator& a, const WeylOperator& b) {
  require_same_shape(a, b);
  long long s = 0;
  for (int i = 0; i < a.sites(); ++i) {
    s += static_cast<long long>(a.x()[i]) * b.z()[i] -
         static_cast<long long>(a.z()[i]) * b.x()[i];
  }
  return mod(s, a.dim());
}

bool commutes(const WeylOperator& a, const WeylOperator& b) {
  return symplectic_product(a, b) == 0;
}

std::size_t hilbert_dim(int sites, int dim, std::size_t max_dim) {
  std::size_t n = 1;
  for (int i = 0; i < sites; ++i) {
    if (n > max_dim / static_cast<std::size_t>(dim)) {
      throw SizeError("dimension " + std::to_string(dim) + "^" + std::to_string(sites) +
                      " exceeds cap " + std::to_string(max_dim));
    }
    n *= static_cast<std::size_t>(dim);
  }
  return n;
}

namespace {

class WeylParser {
 public:
  WeylParser(std::string_view text, int sites, int dim)
      : text_(text), sites_(sites), dim_(dim) {}

  WeylOperator parse() {
    WeylOperator result(sites_, dim_);
    skip_space();
    result = result.times_phase(parse_phase_tag());
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      result = weyl_mul(result, parse_factor());
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("operator \"" + std::string(text_) + "\" at position " +
                     std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  long long parse_int(bool allow_sign) {
    const std::size_t start = pos_;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      pos_ = start;
      fail("expected an integer");
    }
    return value;
  }

  int parse_phase_tag() {
    if (consume("tau^")) return mod(parse_int(true), 2LL * dim_);
    if (consume("w^")) return mod(2 * parse_int(true), 2LL * dim_);
    int phase = 0;
    if (consume("-")) {
      phase = dim_;
    } else {
      consume("+");
    }
    skip_space();
    if (consume("i")) {
      if (dim_ % 2 != 0) fail("phase i is not a power of tau for odd d");
      phase += dim_ / 2;
    }
    return phase;
  }

  WeylOperator parse_factor() {
    const char letter = text_[pos_];
    if (letter != 'X' && letter != 'Z' && letter != 'Y' && letter != 'I') {
      fail(std::string("unexpected character '") + letter + "'");
    }
    ++pos_;
    if (letter == 'I') {
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        parse_site();
      }
      return WeylOperator(sites_, dim_);
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(std::string("factor '") + letter + "' needs a site index");
    }
    const int site = parse_site();
    long long power = 1;
    if (consume("^")) power = parse_int(true);
    switch (letter) {
      case 'X': return WeylOperator::shift(sites_, dim_, site, mod(power, dim_));
      case 'Z': return WeylOperator::clock(sites_, dim_, site, mod(power, dim_));
      default:
        if (dim_ != 2) fail("Y is only defined for qubits");
        return weyl_pow(WeylOperator::pauli_y(sites_, site), power);
    }
  }

  int parse_site() {
    const std::size_t start = pos_;
    const long long site = parse_int(false);
    if (site < 1 || site > sites_) {
      pos_ = start;
      fail("site index " + std::to_string(site) + " outside 1.." + std::to_string(sites_));
    }
    return static_cast<int>(site - 1);
  }

  std::string_view text_;
  int sites_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

WeylOperator parse_weyl(std::string_view text, int sites, int dim) {
  if (sites < 0) throw ContractViolation("negative site count");
  if (dim < 2) throw ContractViolation("qudit dimension must be >= 2");
  return WeylParser(text, sites, dim).parse();
}

std::string format_weyl(const WeylOperator& a) {
  const int d = a.dim();
  std::vector<std::string> factors;
  int phase = a.phase();
  for (int s = 0; s < a.sites(); ++s) {
    const int x = a.x()[s];
    const int z = a.z()[s];
    const std::string idx = std::to_string(s + 1);
    if (d == 2 && x == 1 && z == 1) {
      // Y = tau X Z
      factors.push_back("Y" + idx);
      phase = mod(phase - 1, 4);
      continue;
    }
    if (x != 0) factors.push_back("X" + idx + (x > 1 ? "^" + std::to_string(x) : ""));
    if (z != 0) factors.push_back("Z" + idx + (z > 1 ? "^" + std::to_string(z) : ""));
  }
  std::string tag;
  bool spaced = false;
  if (phase == 0) {
  } else if (phase == d) {
    tag = "-";
  } else if (d % 2 == 0 && phase == d / 2) {
    tag = "i";
  } else if (d % 2 == 0 && phase == 3 * d / 2) {
    tag = "-i";
  } else {
    tag = "tau^" + std::to_string(phase);
    spaced = true;
  }
  std::ostringstream out;
  out << tag;
  if (spaced) out << ' ';
  if (factors.empty()) {
    out << 'I';
  } else {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out << ' ';
      out << factors[i];
    }
  }
  return out.str();
}

MeasurementContext::MeasurementContext(std::vector<WeylOperator> observables,
                                       std::vector<std::string> labels)
    : observables_(std::move(observables)), labels_(std::move(labels)) {
  if (observables_.empty()) throw ContractViolation("measurement context is empty");
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    for (std::size_t j = i + 1; j < observables_.size(); ++j) {
      if (observables_[i].sites() != observables_[j].sites() ||
          observables_[i].dim() != observables_[j].dim()) {
        throw ContractViolation("context members differ in shape");
      }
      if (!commutes(observables_[i], observables_[j])) {
        throw ContractViolation("context members " + format_weyl(observables_[i]) + " and " +
                                format_weyl(observables_[j]) + " do not commute");
      }
    }
  }
  if (labels_.empty()) {
    for (const auto& op : observables_) labels_.push_back(format_weyl(op));
  } else if (labels_.size() != observables_.size()) {
    throw ContractViolation("context label count does not match observable count");
  }
}

int MeasurementContext::sites() const { return observables_.front().sites(); }
int MeasurementContext::dim() const { return observables_.front().dim(); }

}  // namespace contextlab
