#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcert/quatalg.hpp"

namespace rcert {

// Scenario configuration. a1 verifies the even-rank unitary family, a2 the
// odd-rank one, dd the rank-3 orthogonal example, prelim the shared local
// facts they build on.
struct Scenario {
    enum class Kind { prelim, a1, a2, dd };

    Kind kind = Kind::prelim;
    long p = 5;
    long m = 1;
    std::optional<long> unit_override;
    int precision = PAdicNumber::default_precision;

    // Validates p (odd prime), m >= 1 and the unit override (a nonsquare
    // unit mod p); returns the working unit value.
    long validated_unit() const;
    std::string kind_name() const;
    std::string group_type() const; // "2A_{4m-1}", "2A_{4m+1}", "2D_3"
};

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Certificate {
    Scenario scenario;
    std::vector<Check> checks;
    bool verdict = false;
    nlohmann::ordered_json doc;

    std::string to_json_string() const { return doc.dump(2) + "\n"; }
    std::string to_text() const;
};

Certificate run_prelim(const Scenario& sc);
Certificate run_unitary_family(const Scenario& sc); // kind a1 or a2
Certificate run_example_DD(const Scenario& sc);
Certificate run_scenario(const Scenario& sc);

int cli_main(int argc, char** argv);

} // namespace rcert
