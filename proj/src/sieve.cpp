#include "moebius/sieve.hpp"

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

#include "moebius/kernels.hpp"

namespace moebius {

namespace {

// mu_ doubles as the "not yet reached" marker during sieving.
constexpr std::int8_t kUnvisited = 2;

// Upper bound on pi(n) for the prime list reservation (Rosser-Schoenfeld style, loose).
std::uint64_t prime_count_bound(std::uint64_t n) noexcept
{
    if (n < 17)
        return 6;
    const double ln = std::log(static_cast<double>(n));
    return static_cast<std::uint64_t>(1.26 * static_cast<double>(n) / ln) + 1;
}

} // namespace

std::size_t memory_budget_from_env()
{
    const char* raw = std::getenv("MOEBIUS_MEM_BYTES");
    if (raw == nullptr || *raw == '\0')
        return kDefaultMemoryBudget;
    const std::string_view text(raw);
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value == 0)
        throw InvalidArgument("MOEBIUS_MEM_BYTES must be a positive integer, got '" + std::string(text) + "'");
    return value;
}

std::size_t table_bytes(std::uint64_t limit) noexcept
{
    const std::uint64_t entries = limit + 1;
    return entries * (sizeof(std::int8_t) + sizeof(std::int64_t))
         + prime_count_bound(limit) * sizeof(std::uint32_t);
}

std::int8_t MoebiusTable::mu(std::uint64_t k) const
{
    if (k < 1 || k > limit_)
        throw InvalidArgument("mu index " + std::to_string(k) + " outside 1.." + std::to_string(limit_));
    return mu_[k];
}

std::int64_t MoebiusTable::mertens(FloorArg x) const
{
    if (x.floor() > limit_)
        throw InvalidArgument("mertens argument " + std::to_string(x.floor()) + " exceeds table limit "
                              + std::to_string(limit_));
    return prefix_[x.floor()];
}

MoebiusTable build_table(std::uint64_t limit, const SieveOptions& options)
{
    if (limit == 0)
        throw InvalidArgument("table limit must be at least 1");
    if (limit >= (std::uint64_t{1} << 32))
        throw ResourceError("table limit " + std::to_string(limit) + " exceeds the 32-bit prime index range");
    const std::size_t required = table_bytes(limit);
    if (required > options.memory_budget)
        throw ResourceError("table for limit " + std::to_string(limit) + " needs " + std::to_string(required)
                            + " bytes, budget is " + std::to_string(options.memory_budget) + " bytes");

    MoebiusTable table;
    table.limit_ = limit;
    table.mu_.assign(limit + 1, kUnvisited);
    table.mu_[0] = 0;
    table.mu_[1] = 1;

    std::vector<std::uint32_t> primes;
    primes.reserve(prime_count_bound(limit));
    auto& mu = table.mu_;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (mu[i] == kUnvisited) {
            mu[i] = -1;
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (const std::uint32_t p : primes) {
            const std::uint64_t composite = i * p;
            if (composite > limit)
                break;
            if (i % p == 0) {
                mu[composite] = 0;
                break;
            }
            mu[composite] = static_cast<std::int8_t>(-mu[i]);
        }
    }

    table.prefix_.resize(limit + 1);
    table.prefix_[0] = 0;
    kernels::prefix_sum(std::span<const std::int8_t>(mu).subspan(1),
                        std::span<std::int64_t>(table.prefix_).subspan(1));
    return table;
}

void require_limit(const MoebiusTable& table, std::uint64_t needed)
{
    if (needed > table.limit())
        throw InvalidArgument("Moebius table covers 1.." + std::to_string(table.limit()) + " but "
                              + std::to_string(needed) + " is needed");
}

} // namespace moebius
