// reproduce.hpp -- the one-shot check catalog: every built-in worked example,
// analytic family, spectral table row, boundary case, and the numeric oracle,
// rendered as a deterministic pass/fail ledger.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace moments {

struct LedgerEntry {
    std::string anchor;  // catalog key, e.g. "Eq (3.12)-(3.14)" or "Table k=3"
    std::string claim;
    bool pass = false;
};

struct Ledger {
    std::vector<LedgerEntry> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

/// Runs the whole catalog.  Deterministic: fixed order, fixed primes, fixed
/// formatting, no timestamps; two runs emit byte-identical ledgers.
Ledger run_reproduction();

std::string render_text(const Ledger& ledger);
nlohmann::json render_json(const Ledger& ledger);

}  // namespace moments
