#include "sandpile/dynamics.hpp"

#include <algorithm>
#include <deque>

namespace sandpile {

namespace {

void require_length(const Graph& g, const Config& c) {
  if (c.size() != g.num_nonsink())
    throw ValidationError("configuration has " + std::to_string(c.size()) + " entries, expected " +
                          std::to_string(g.num_nonsink()));
}

void require_nonnegative(const Config& c, const char* what) {
  if (!is_nonnegative(c)) throw ValidationError(std::string(what) + ": configuration has a negative entry");
}

void add_firings(const Graph& g, Config& c, Index v, std::int64_t k) {
  for (Index u = 0; u < c.size(); ++u) c(u) += k * g.weight(v, u);
  c(v) -= k * g.outdeg(v);
}

}  // namespace

bool is_nonnegative(const Config& c) { return c.size() == 0 || c.minCoeff() >= 0; }

bool is_stable(const Graph& g, const Config& c) {
  require_length(g, c);
  for (Index v = 0; v < c.size(); ++v)
    if (c(v) >= g.outdeg(v)) return false;
  return true;
}

Config fire(const Graph& g, Config c, Index v) {
  require_length(g, c);
  if (v < 0 || v >= g.num_nonsink()) throw ValidationError("only nonsink vertices fire");
  add_firings(g, c, v, 1);
  return c;
}

Config unfire(const Graph& g, Config c, Index v) {
  require_length(g, c);
  if (v < 0 || v >= g.num_nonsink()) throw ValidationError("only nonsink vertices fire");
  add_firings(g, c, v, -1);
  return c;
}

Config topple(const Graph& g, const Script& sigma) {
  require_length(g, sigma);
  Config out = Config::Zero(sigma.size());
  for (Index v = 0; v < sigma.size(); ++v)
    if (sigma(v) != 0) add_firings(g, out, v, -sigma(v));
  return out;
}

Stabilized stabilize(const Graph& g, Config c) {
  require_length(g, c);
  require_nonnegative(c, "stabilize");
  const Index n = c.size();
  Script script = Script::Zero(n);
  std::deque<Index> work;
  std::vector<char> queued(static_cast<std::size_t>(n), 0);
  for (Index v = 0; v < n; ++v)
    if (c(v) >= g.outdeg(v)) {
      work.push_back(v);
      queued[static_cast<std::size_t>(v)] = 1;
    }
  while (!work.empty()) {
    const Index v = work.front();
    work.pop_front();
    queued[static_cast<std::size_t>(v)] = 0;
    if (c(v) < g.outdeg(v)) continue;
    // Net loss per firing excludes the loop; positive since v reaches the sink.
    const std::int64_t net = g.outdeg(v) - g.weight(v, v);
    const std::int64_t k = (c(v) - g.outdeg(v)) / net + 1;
    add_firings(g, c, v, k);
    script(v) += k;
    for (Index u = 0; u < n; ++u)
      if (!queued[static_cast<std::size_t>(u)] && c(u) >= g.outdeg(u)) {
        work.push_back(u);
        queued[static_cast<std::size_t>(u)] = 1;
      }
  }
  return {std::move(c), std::move(script)};
}

Config max_stable(const Graph& g) {
  return g.outdegrees().head(g.num_nonsink()).array() - 1;
}

Config stable_add(const Graph& g, const Config& a, const Config& b) {
  require_length(g, a);
  require_length(g, b);
  require_nonnegative(a, "stable_add");
  require_nonnegative(b, "stable_add");
  if (!is_stable(g, a) || !is_stable(g, b)) throw ValidationError("stable_add: operands must be stable");
  return stabilize(g, a + b).config;
}

Burning min_burning_config(const Graph& g) {
  const Index n = g.num_nonsink();
  Script sigma = Script::Ones(n);
  Config b = topple(g, sigma);
  for (;;) {
    Index neg = -1;
    for (Index v = 0; v < n && neg < 0; ++v)
      if (b(v) < 0) neg = v;
    if (neg < 0) break;
    b = unfire(g, b, neg);
    sigma(neg) += 1;
  }
  return {std::move(b), std::move(sigma)};
}

bool is_recurrent(const Graph& g, const Config& c, const Burning& b) {
  require_length(g, c);
  require_nonnegative(c, "is_recurrent");
  if (!is_stable(g, c)) throw ValidationError("is_recurrent: configuration must be stable");
  return stabilize(g, c + b.config).config == c;
}

bool is_recurrent(const Graph& g, const Config& c) { return is_recurrent(g, c, min_burning_config(g)); }

Config identity(const Graph& g) {
  const Config cmax = max_stable(g);
  const Config twice = stabilize(g, 2 * cmax).config;
  return stabilize(g, (cmax - twice) + cmax).config;
}

Config recurrent_equivalent(const Graph& g, const Config& c) {
  require_length(g, c);
  const Config cmax = max_stable(g);
  // p = delta - delta° lies in the lattice and is at least 2 everywhere.
  const Config delta = cmax.array() + 2;
  const Config p = delta - stabilize(g, delta).config;
  std::int64_t k = 0;
  for (Index v = 0; v < c.size(); ++v)
    if (c(v) < cmax(v)) k = std::max(k, (cmax(v) - c(v) + p(v) - 1) / p(v));
  return stabilize(g, c + k * p).config;
}

std::vector<Script> script_box(const Script& bound, const Caps& caps) {
  double size = 1;
  for (Index i = 0; i < bound.size(); ++i) size *= static_cast<double>(bound(i) + 1);
  if (size > static_cast<double>(caps.max_box))
    throw CapExceeded("script box of size " + std::to_string(static_cast<long long>(size)) + " exceeds cap");
  std::vector<Script> out;
  Script s = Script::Zero(bound.size());
  for (;;) {
    Index i = 0;
    while (i < s.size() && s(i) == bound(i)) s(i++) = 0;
    if (i == s.size()) break;
    s(i) += 1;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Script& a, const Script& b) {
    const auto sa = a.sum(), sb = b.sum();
    if (sa != sb) return sa < sb;
    return VecLess{}(a, b);
  });
  return out;
}

Superstabilizer::Superstabilizer(const Graph& g, const Caps& caps) : g_(g) {
  scripts_ = script_box(min_burning_config(g).script, caps);
  loss_.reserve(scripts_.size());
  for (const auto& s : scripts_) loss_.push_back(topple(g, s));
}

Stabilized Superstabilizer::operator()(const Config& c) const {
  require_length(g_, c);
  require_nonnegative(c, "superstabilize");
  Stabilized st = stabilize(g_, c);
  for (bool fired = true; fired;) {
    fired = false;
    for (std::size_t k = 0; k < scripts_.size(); ++k) {
      if (((st.config - loss_[k]).array() >= 0).all()) {
        st.config -= loss_[k];
        st.script += scripts_[k];
        fired = true;
        break;
      }
    }
  }
  return st;
}

bool Superstabilizer::is_superstable(const Config& c) const {
  require_length(g_, c);
  require_nonnegative(c, "is_superstable");
  for (const auto& l : loss_)
    if (((c - l).array() >= 0).all()) return false;
  return true;
}

bool is_superstable(const Graph& g, const Config& c) { return Superstabilizer(g).is_superstable(c); }

Stabilized superstabilize(const Graph& g, const Config& c, const Caps& caps) {
  return Superstabilizer(g, caps)(c);
}

}  // namespace sandpile
