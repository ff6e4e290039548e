#include "sandpile/format.hpp"

#include "sandpile/error.hpp"

#include <sstream>

namespace sandpile {

std::string to_csv(const Vec& v) {
  std::ostringstream out;
  for (Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v(i);
  return out.str();
}

Vec parse_csv(const std::string& text) {
  std::vector<std::int64_t> xs;
  std::istringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    const auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("empty entry in '" + text + "'");
    tok = tok.substr(b, e - b + 1);
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ValidationError("bad integer '" + tok + "' in '" + text + "'");
    xs.push_back(x);
  }
  return to_vec(xs);
}

std::string digits(const Vec& v) {
  if (v.size() > 0 && v.minCoeff() >= 0 && v.maxCoeff() <= 9) {
    std::string s;
    for (Index i = 0; i < v.size(); ++i) s += static_cast<char>('0' + v(i));
    return s;
  }
  return to_csv(v);
}

std::string to_string(const Integer& x) { return x.str(); }

}  // namespace sandpile
