#include "moebius/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>

#include <json.hpp>

#include "moebius/delta.hpp"
#include "moebius/error.hpp"
#include "moebius/identity.hpp"

namespace moebius::oracle {

namespace {

constexpr std::array<CheckFamily, kCheckFamilyCount> kFamilies{
    CheckFamily::eq1_mertens_identity, CheckFamily::eq4_n_zero_inclusion_exclusion,
    CheckFamily::eq5_n_zero_moebius_sum, CheckFamily::eq6_q_squarefree,
    CheckFamily::eq6_census, CheckFamily::eq8_delta_floor,
    CheckFamily::eq10_mertens_delta, CheckFamily::eq11_mu_delta,
    CheckFamily::eq12_n_zero_delta, CheckFamily::eq13_q_delta,
    CheckFamily::eq14_n_plus_delta, CheckFamily::eq15_n_minus_delta,
};

using Values = std::vector<std::int64_t>;

std::int64_t as_i64(std::uint64_t v)
{
    return static_cast<std::int64_t>(v);
}

Values census_values(const Census& c)
{
    return {as_i64(c.n_plus), as_i64(c.n_minus), as_i64(c.n_zero), as_i64(c.q), c.m};
}

// Brute-force tallies at every x, from one trial-division pass.
struct Tallies {
    std::vector<std::int8_t> mu;
    std::vector<std::uint64_t> plus;
    std::vector<std::uint64_t> minus;

    explicit Tallies(std::uint64_t x_max) : mu(x_max + 1), plus(x_max + 1), minus(x_max + 1)
    {
        for (std::uint64_t k = 1; k <= x_max; ++k) {
            mu[k] = mu_bruteforce(k);
            plus[k] = plus[k - 1] + (mu[k] == 1);
            minus[k] = minus[k - 1] + (mu[k] == -1);
        }
    }

    Census at(std::uint64_t x) const
    {
        Census c;
        c.floor_x = x;
        c.n_plus = plus[x];
        c.n_minus = minus[x];
        c.n_zero = x - plus[x] - minus[x];
        c.q = plus[x] + minus[x];
        c.m = as_i64(plus[x]) - as_i64(minus[x]);
        return c;
    }
};

Check run_check(CheckFamily family, std::uint64_t x, const Values& expected,
                const std::function<Values()>& evaluate)
{
    Check check{family, x, expected, {}, false, {}};
    try {
        check.actual = evaluate();
        check.passed = check.actual == check.expected;
    } catch (const std::exception& e) {
        check.error = e.what();
    }
    return check;
}

void check_point(const MoebiusTable& table, const Tallies& truth, const std::vector<std::uint64_t>& primes,
                 std::uint64_t x, std::vector<Check>& out)
{
    const Census want = truth.at(x);
    const std::uint64_t s = isqrt(x);
    auto add = [&](CheckFamily f, Values expected, const std::function<Values()>& evaluate) {
        out.push_back(run_check(f, x, expected, evaluate));
    };

    add(CheckFamily::eq1_mertens_identity, {want.m}, [&] { return Values{mertens_identity(table, x)}; });
    add(CheckFamily::eq4_n_zero_inclusion_exclusion, {as_i64(want.n_zero)},
        [&] { return Values{as_i64(n_zero_inclusion_exclusion(x, primes))}; });
    add(CheckFamily::eq5_n_zero_moebius_sum, {as_i64(want.n_zero)},
        [&] { return Values{as_i64(n_zero_moebius_sum(table, x))}; });
    add(CheckFamily::eq6_q_squarefree, {as_i64(want.q)}, [&] { return Values{as_i64(q_squarefree(table, x))}; });
    add(CheckFamily::eq6_census, census_values(want), [&] { return census_values(census(table, x)); });

    // Divisors 1..isqrt(x) and x itself.
    Values floors;
    for (std::uint64_t d = 1; d <= s; ++d)
        floors.push_back(as_i64(x / d));
    floors.push_back(1);
    add(CheckFamily::eq8_delta_floor, floors, [&] {
        Values got;
        for (std::uint64_t d = 1; d <= s; ++d)
            got.push_back(as_i64(delta_floor(x, d)));
        got.push_back(as_i64(delta_floor(x, x)));
        return got;
    });

    add(CheckFamily::eq10_mertens_delta, {want.m}, [&] { return Values{mertens_delta(table, x)}; });

    if (x >= 2) {
        add(CheckFamily::eq11_mu_delta, {truth.mu[x]}, [&] { return Values{mu_delta(table, x)}; });
    } else {
        // Outside the identity's domain: the evaluator must refuse x = 1.
        add(CheckFamily::eq11_mu_delta, {1}, [&] {
            try {
                (void)mu_delta(table, x);
            } catch (const InvalidArgument&) {
                return Values{1};
            }
            return Values{0};
        });
    }

    add(CheckFamily::eq12_n_zero_delta, {as_i64(want.n_zero)}, [&] { return Values{as_i64(n_zero_delta(table, x))}; });
    add(CheckFamily::eq13_q_delta, {as_i64(want.q)}, [&] { return Values{as_i64(q_delta(table, x))}; });

    Census got{};
    std::string delta_error;
    try {
        got = census_delta(table, x);
    } catch (const std::exception& e) {
        delta_error = e.what();
    }
    auto delta_check = [&](CheckFamily f, std::int64_t expected, std::int64_t actual) {
        Check check{f, x, {expected}, {}, false, delta_error};
        if (delta_error.empty()) {
            check.actual = {actual};
            check.passed = expected == actual;
        }
        out.push_back(std::move(check));
    };
    delta_check(CheckFamily::eq14_n_plus_delta, as_i64(want.n_plus), as_i64(got.n_plus));
    delta_check(CheckFamily::eq15_n_minus_delta, as_i64(want.n_minus), as_i64(got.n_minus));
}

} // namespace

std::int8_t mu_bruteforce(std::uint64_t k)
{
    if (k == 0)
        throw InvalidArgument("mu_bruteforce requires k >= 1");
    int primes = 0;
    for (std::uint64_t d = 2; d <= k / d; ++d) {
        if (k % d != 0)
            continue;
        k /= d;
        if (k % d == 0)
            return 0;
        ++primes;
    }
    if (k > 1)
        ++primes;
    return primes % 2 == 0 ? 1 : -1;
}

std::vector<std::uint64_t> primes_bruteforce(std::uint64_t bound)
{
    std::vector<std::uint64_t> primes;
    for (std::uint64_t c = 2; c <= bound; ++c) {
        bool prime = true;
        for (std::uint64_t d = 2; d <= c / d; ++d) {
            if (c % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime)
            primes.push_back(c);
    }
    return primes;
}

Census census_bruteforce(FloorArg x, std::uint64_t cap)
{
    const std::uint64_t n = x.floor();
    if (n < 1)
        throw InvalidArgument("census_bruteforce requires x >= 1");
    if (n > cap)
        throw ResourceError("brute-force census capped at " + std::to_string(cap) + ", got " + std::to_string(n));
    Census c;
    c.floor_x = n;
    for (std::uint64_t k = 1; k <= n; ++k) {
        switch (mu_bruteforce(k)) {
        case 1:
            ++c.n_plus;
            break;
        case -1:
            ++c.n_minus;
            break;
        default:
            ++c.n_zero;
        }
    }
    c.q = c.n_plus + c.n_minus;
    c.m = as_i64(c.n_plus) - as_i64(c.n_minus);
    return c;
}

std::string_view name(CheckFamily family) noexcept
{
    switch (family) {
    case CheckFamily::eq1_mertens_identity:
        return "eq1_mertens_identity";
    case CheckFamily::eq4_n_zero_inclusion_exclusion:
        return "eq4_n_zero_inclusion_exclusion";
    case CheckFamily::eq5_n_zero_moebius_sum:
        return "eq5_n_zero_moebius_sum";
    case CheckFamily::eq6_q_squarefree:
        return "eq6_q_squarefree";
    case CheckFamily::eq6_census:
        return "eq6_census";
    case CheckFamily::eq8_delta_floor:
        return "eq8_delta_floor";
    case CheckFamily::eq10_mertens_delta:
        return "eq10_mertens_delta";
    case CheckFamily::eq11_mu_delta:
        return "eq11_mu_delta";
    case CheckFamily::eq12_n_zero_delta:
        return "eq12_n_zero_delta";
    case CheckFamily::eq13_q_delta:
        return "eq13_q_delta";
    case CheckFamily::eq14_n_plus_delta:
        return "eq14_n_plus_delta";
    case CheckFamily::eq15_n_minus_delta:
        return "eq15_n_minus_delta";
    }
    return "?";
}

const std::array<CheckFamily, kCheckFamilyCount>& all_families() noexcept
{
    return kFamilies;
}

std::size_t VerifyReport::failure_count() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

VerifyReport verify_all(const MoebiusTable& table, std::uint64_t x_max, const VerifyOptions& options)
{
    if (x_max < 1)
        throw InvalidArgument("verify_all requires x_max >= 1");
    if (x_max > options.cap)
        throw ResourceError("verify_all capped at " + std::to_string(options.cap) + ", got " + std::to_string(x_max));
    require_limit(table, isqrt(x_max));

    const Tallies truth(x_max);
    const std::vector<std::uint64_t> primes = primes_bruteforce(isqrt(x_max));

    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(x_max)));
    std::vector<std::vector<Check>> parts(workers);
    std::atomic<bool> stop{false};

    auto run = [&](unsigned w) {
        // Interleaved assignment balances the cost, which grows with x.
        for (std::uint64_t x = 1 + w; x <= x_max; x += workers) {
            if (stop.load(std::memory_order_relaxed))
                return;
            const std::size_t before = parts[w].size();
            check_point(table, truth, primes, x, parts[w]);
            if (options.fail_fast
                && std::any_of(parts[w].begin() + static_cast<std::ptrdiff_t>(before), parts[w].end(),
                               [](const Check& c) { return !c.passed; }))
                stop.store(true);
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (auto& t : pool)
            t.join();
    }

    VerifyReport report;
    report.x_first = 1;
    report.x_last = x_max;
    for (auto& part : parts) {
        report.checks.insert(report.checks.end(), std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
    }
    std::sort(report.checks.begin(), report.checks.end(), [](const Check& a, const Check& b) {
        return a.x != b.x ? a.x < b.x : a.family < b.family;
    });
    report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                    [](const Check& c) { return c.passed; });
    return report;
}

std::string to_json(const VerifyReport& report, int indent)
{
    nlohmann::ordered_json doc;
    doc["x_range"] = {report.x_first, report.x_last};
    doc["checks"] = report.checks.size();
    auto& families = doc["families"] = nlohmann::ordered_json::array();
    for (const auto f : kFamilies)
        families.push_back(std::string(name(f)));
    auto& failures = doc["failures"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        if (c.passed)
            continue;
        nlohmann::ordered_json entry;
        entry["family"] = std::string(name(c.family));
        entry["x"] = c.x;
        entry["expected"] = c.expected;
        entry["actual"] = c.actual;
        if (!c.error.empty())
            entry["error"] = c.error;
        failures.push_back(std::move(entry));
    }
    doc["all_passed"] = report.all_passed;
    return doc.dump(indent);
}

} // namespace moebius::oracle
