#include "screenlab/beliefs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace screenlab {

std::string TypeRange::label() const {
    if (empty()) return "{}";
    if (lo == hi) return "{" + std::to_string(lo) + "}";
    return "{" + std::to_string(lo) + ".." + std::to_string(hi) + "}";
}

TypeRange intersect(const TypeRange& a, const TypeRange& b) {
    return TypeRange{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

const Rational& MarginalBelief::p(int j) const {
    if (!message.contains(j))
        throw std::out_of_range("type " + std::to_string(j) + " outside message " + message.label());
    return probs[static_cast<size_t>(j - message.lo)];
}

bool MarginalBelief::supported(int j) const {
    return message.contains(j) && sgn(probs[static_cast<size_t>(j - message.lo)]) > 0;
}

std::vector<int> MarginalBelief::support() const {
    std::vector<int> out;
    for (int j = message.lo; j <= message.hi; ++j) {
        if (supported(j)) out.push_back(j);
    }
    return out;
}

TypeRange MarginalBelief::support_hull() const {
    auto s = support();
    if (s.empty()) return TypeRange{1, 0};
    return TypeRange{s.front(), s.back()};
}

std::string MarginalBelief::key() const {
    std::string k = message.label() + ":";
    for (const auto& x : probs) k += to_fraction(x) + ",";
    return k;
}

MarginalBelief make_belief(const TypeRange& message, std::vector<Rational> probs) {
    if (message.empty()) throw std::invalid_argument("belief over an empty message");
    if (static_cast<int>(probs.size()) != message.size())
        throw std::invalid_argument("belief over " + message.label() + " needs " + std::to_string(message.size()) +
                                    " probabilities, got " + std::to_string(probs.size()));
    Rational total = 0;
    for (const auto& x : probs) {
        if (sgn(x) < 0) throw std::invalid_argument("negative probability in belief over " + message.label());
        total += x;
    }
    if (total != 1)
        throw std::invalid_argument("probabilities over " + message.label() + " sum to " + to_fraction(total));
    return MarginalBelief{message, std::move(probs)};
}

MarginalBelief belief_from_weights(const TypeRange& message, const std::vector<Rational>& weights) {
    Rational total = 0;
    for (const auto& w : weights) total += w;
    if (sgn(total) <= 0) throw std::invalid_argument("weights over " + message.label() + " have no positive mass");
    std::vector<Rational> probs;
    for (const auto& w : weights) probs.push_back(w / total);
    return make_belief(message, std::move(probs));
}

bool is_log_concave(const MarginalBelief& p) {
    auto s = p.support();
    if (s.empty()) return false;
    if (s.back() - s.front() + 1 != static_cast<int>(s.size())) return false;
    for (int j = p.message.lo + 1; j < p.message.hi; ++j) {
        if (p.p(j) * p.p(j) < p.p(j - 1) * p.p(j + 1)) return false;
    }
    return true;
}

Rational virtual_cost(const MarginalBelief& p, int j) {
    if (!p.supported(j))
        throw std::invalid_argument("virtual cost of type " + std::to_string(j) + " which has zero probability");
    Rational lower = 0;
    for (int k = p.message.lo; k < j; ++k) lower += p.p(k);
    return Rational(j) + lower / p.p(j);
}

MarginalBelief condition(const MarginalBelief& p_big, const TypeRange& theta_set) {
    if (theta_set.empty() || !p_big.message.contains(theta_set))
        throw std::invalid_argument("conditioning set " + theta_set.label() + " not inside " + p_big.message.label());
    Rational mass = 0;
    for (int j = theta_set.lo; j <= theta_set.hi; ++j) mass += p_big.p(j);
    if (sgn(mass) == 0) throw std::invalid_argument("belief has zero mass on " + theta_set.label());
    std::vector<Rational> probs;
    for (int j = theta_set.lo; j <= theta_set.hi; ++j) probs.push_back(p_big.p(j) / mass);
    return MarginalBelief{theta_set, std::move(probs)};
}

bool check_reverse_bayes(const MarginalBelief& a, const MarginalBelief& b) {
    std::vector<int> common;
    for (int j : a.support()) {
        if (b.supported(j)) common.push_back(j);
    }
    if (common.size() < 2) return true;
    int r = common.front();
    for (size_t k = 1; k < common.size(); ++k) {
        int j = common[k];
        if (a.p(j) * b.p(r) != b.p(j) * a.p(r)) return false;
    }
    return true;
}

bool check_wariness(const MarginalBelief& p, const TypeRange& theta_p) {
    const TypeRange& m = p.message;
    if (!theta_p.contains(m.lo) && !p.supported(m.lo)) return false;
    if (!theta_p.contains(m.hi) && !p.supported(m.hi)) return false;
    return true;
}

bool monotone_supports_pair(const TypeRange& message_a, const TypeRange& support_a, const TypeRange& message_b,
                            const TypeRange& support_b) {
    if (!(message_a.lo <= message_b.lo && message_a.hi <= message_b.hi)) return true;
    if (support_a.empty() || support_b.empty()) return true;
    int overall_min = std::min(support_a.lo, support_b.lo);
    int overall_max = std::max(support_a.hi, support_b.hi);
    return support_a.contains(overall_min) && support_b.contains(overall_max);
}

std::string BeliefFamily::key() const {
    std::string k;
    for (const auto& m : members) k += m.key() + ";";
    return k;
}

bool check_monotone_supports(const BeliefFamily& fam) {
    for (size_t a = 0; a < fam.members.size(); ++a) {
        for (size_t b = 0; b < fam.members.size(); ++b) {
            if (a == b) continue;
            const auto& pa = fam.members[a];
            const auto& pb = fam.members[b];
            if (!(pa.message.lo <= pb.message.lo && pa.message.hi <= pb.message.hi)) continue;
            auto sa = pa.support();
            auto sb = pb.support();
            if (sa.empty() || sb.empty()) continue;
            int overall_min = std::min(sa.front(), sb.front());
            int overall_max = std::max(sa.back(), sb.back());
            if (!pa.supported(overall_min) || !pb.supported(overall_max)) return false;
        }
    }
    return true;
}

bool check_family(const BeliefFamily& fam, const TypeRange& theta_p, std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    for (const auto& m : fam.members) {
        if (!is_log_concave(m)) return fail("belief at " + m.message.label() + " is not log-concave");
        if (!check_wariness(m, theta_p)) return fail("belief at " + m.message.label() + " is not wary");
    }
    for (size_t a = 0; a < fam.members.size(); ++a) {
        for (size_t b = a + 1; b < fam.members.size(); ++b) {
            if (!check_reverse_bayes(fam.members[a], fam.members[b]))
                return fail("beliefs at " + fam.members[a].message.label() + " and " + fam.members[b].message.label() +
                            " violate reverse Bayesianism");
        }
    }
    if (!check_monotone_supports(fam)) return fail("supports do not move monotonically");
    return true;
}

bool hazard_sum_identity_check(const MarginalBelief& p_big, const MarginalBelief& p_small) {
    if (!check_reverse_bayes(p_big, p_small))
        throw std::invalid_argument("hazard-sum identity needs a reverse-Bayes pair");
    for (int j : p_small.support()) {
        if (!p_big.supported(j)) continue;
        Rational small_sum = 0;
        Rational big_sum = 0;
        for (int k = j - 1; p_small.supported(k) && p_big.supported(k); --k) {
            small_sum += p_small.p(k);
            big_sum += p_big.p(k);
            if (small_sum / p_small.p(j) != big_sum / p_big.p(j)) return false;
        }
    }
    return true;
}

RankMap make_rank_map(const TypeRange& message, const TypeRange& theta_bar) {
    if (!theta_bar.contains(message)) throw std::invalid_argument("message " + message.label() + " not inside " + theta_bar.label());
    RankMap r;
    for (int i = 1; i <= message.size(); ++i) {
        int type = message.hi - (i - 1);
        r.j.push_back(theta_bar.hi - type + 1);
    }
    return r;
}

std::vector<std::vector<long>> log_concave_weight_profiles(int n, long weight_denominator) {
    if (n < 1) throw std::invalid_argument("weight profile length must be positive");
    if (weight_denominator < 1) throw std::invalid_argument("weight denominator must be positive");
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == n) {
            long g = 0;
            for (long w : cur) g = std::gcd(g, w);
            if (g == 1) out.push_back(cur);
            return;
        }
        for (long w = 1; w <= weight_denominator; ++w) {
            size_t k = cur.size();
            if (k >= 2 && cur[k - 1] * cur[k - 1] < cur[k - 2] * w) continue;
            cur.push_back(w);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

namespace {

TypeRange support_range(const TypeRange& message, const std::vector<int>& support, size_t idx) {
    if (support.empty())
        throw std::invalid_argument("support for message #" + std::to_string(idx) + " is empty");
    std::vector<int> s = support;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("support for message " + message.label() + " repeats a type");
    if (s.back() - s.front() + 1 != static_cast<int>(s.size()))
        throw std::invalid_argument("support for message " + message.label() + " has a gap");
    TypeRange r{s.front(), s.back()};
    if (!message.contains(r))
        throw std::invalid_argument("support " + r.label() + " leaves message " + message.label());
    return r;
}

}  // namespace

std::vector<BeliefFamily> enumerate_belief_families(const std::vector<TypeRange>& messages,
                                                    const std::vector<std::vector<int>>& supports,
                                                    const TypeRange& theta_p, long weight_denominator) {
    if (messages.size() != supports.size())
        throw std::invalid_argument("support assignment must give one support per message");
    if (weight_denominator < 1) throw std::invalid_argument("weight denominator must be positive");
    const size_t n = messages.size();
    std::vector<TypeRange> ranges;
    for (size_t i = 0; i < n; ++i) ranges.push_back(support_range(messages[i], supports[i], i));

    for (size_t i = 0; i < n; ++i) {
        const auto& m = messages[i];
        if ((!theta_p.contains(m.lo) && !ranges[i].contains(m.lo)) || (!theta_p.contains(m.hi) && !ranges[i].contains(m.hi)))
            throw std::invalid_argument("support " + ranges[i].label() + " at message " + m.label() + " violates wariness");
    }
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            if (a != b && !monotone_supports_pair(messages[a], ranges[a], messages[b], ranges[b]))
                throw std::invalid_argument("supports " + ranges[a].label() + " at " + messages[a].label() + " and " +
                                            ranges[b].label() + " at " + messages[b].label() +
                                            " violate monotone supports");
        }
    }

    // Messages whose supports overlap share one weight vector.
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
            if (ranges[a].overlaps(ranges[b])) parent[find(a)] = find(b);
        }
    }
    std::map<size_t, TypeRange> hulls;
    for (size_t i = 0; i < n; ++i) {
        size_t root = find(i);
        auto it = hulls.find(root);
        if (it == hulls.end()) {
            hulls[root] = ranges[i];
        } else {
            it->second = TypeRange{std::min(it->second.lo, ranges[i].lo), std::max(it->second.hi, ranges[i].hi)};
        }
    }
    std::vector<size_t> roots;
    std::vector<std::vector<std::vector<long>>> profiles;
    for (const auto& [root, hull] : hulls) {
        roots.push_back(root);
        profiles.push_back(log_concave_weight_profiles(hull.size(), weight_denominator));
    }

    std::vector<BeliefFamily> out;
    std::set<std::string> seen;
    std::vector<size_t> pick(roots.size(), 0);
    while (true) {
        BeliefFamily fam;
        std::map<size_t, size_t> comp_of_root;
        for (size_t c = 0; c < roots.size(); ++c) {
            comp_of_root[roots[c]] = c;
            fam.generator.push_back(WeightComponent{hulls[roots[c]], profiles[c][pick[c]]});
        }
        for (size_t i = 0; i < n; ++i) {
            size_t c = comp_of_root[find(i)];
            const auto& hull = hulls[roots[c]];
            const auto& w = profiles[c][pick[c]];
            std::vector<Rational> weights;
            for (int j = messages[i].lo; j <= messages[i].hi; ++j) {
                weights.push_back(ranges[i].contains(j) ? Rational(w[static_cast<size_t>(j - hull.lo)]) : Rational(0));
            }
            fam.members.push_back(belief_from_weights(messages[i], weights));
        }
        std::string reason;
        if (!check_family(fam, theta_p, &reason)) throw std::logic_error("generated family fails checks: " + reason);
        if (seen.insert(fam.key()).second) out.push_back(std::move(fam));

        size_t c = 0;
        while (c < pick.size()) {
            if (++pick[c] < profiles[c].size()) break;
            pick[c] = 0;
            ++c;
        }
        if (c == pick.size()) break;
    }
    return out;
}

}  // namespace screenlab
