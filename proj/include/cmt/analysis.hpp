#pragma once

// Batch analyses over the AE domain: reachability matrices, emotional
// priority, the full init x goal x theory experiment grid and a report that
// lines up the published verdicts against every semantics configuration.

#include "cmt/theories.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmt
{

struct reach_cell
{
    bool sat = false;
    bool self_pair = false;
    std::optional< trajectory > witness;
    double wall_ms = 0.0;
};

struct reachability_matrix
{
    std::string theory; // empty for the unconstrained domain
    theory_source source = theory_source::custom;
    semantics_config config;
    std::uint32_t horizon = 6;
    std::vector< std::string > labels;          // catalog order
    std::vector< std::vector< reach_cell > > cells; // [init][goal]

    // Number of inits other than the goal itself from which the goal is reachable.
    [[nodiscard]] std::size_t reached_from_others( std::size_t goal ) const;
    // Same count with the self-pair included.
    [[nodiscard]] std::size_t reached_including_self( std::size_t goal ) const;
    [[nodiscard]] bool self_reachable( std::size_t goal ) const { return cells[ goal ][ goal ].sat; }
    [[nodiscard]] std::size_t index_of( std::string_view label ) const;
};

// Plans from every catalog state to every catalog state. `theories` may be
// empty. Cells are computed on `jobs` threads; the result does not depend on it.
[[nodiscard]] reachability_matrix reachability( const std::vector< theory_spec >& theories,
                                                const semantics_config& config, std::uint32_t horizon = 6,
                                                unsigned jobs = 1 );

// Literals pinning every AE class to the values of `s`.
[[nodiscard]] literal_list ae_literals( const compiled_domain& domain, const state& s );
[[nodiscard]] std::vector< observation > ae_initial_observations( const compiled_domain& domain, const state& s );

class empty_trajectory_set : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct priority_table
{
    std::vector< std::string > classes;
    std::uint32_t horizon = 0;
    std::size_t trajectories = 0;
    std::vector< std::vector< double > > weights; // [class][i - 1], i in 1..horizon

    [[nodiscard]] double weight( std::string_view cls, std::uint32_t step ) const;
};

// P(c, Tr, i) = |{ t in Tr : value of c changes between s_{i-1} and s_i }| / |Tr|.
// Throws empty_trajectory_set for an empty set and std::invalid_argument
// when the trajectories differ in length.
[[nodiscard]] priority_table priority( const compiled_domain& domain, const std::vector< trajectory >& trajectories );

struct experiment_row
{
    std::string init_label;
    std::string goal_label;
    std::string theory;
    bool sat = false;
    std::string plan; // "action@t" items separated by spaces, no-op steps omitted
    double wall_ms = 0.0;
    std::optional< trajectory > witness;
};

struct theory_summary
{
    std::string theory;
    std::size_t sat = 0;
    std::size_t unsat = 0;
    std::vector< std::size_t > reached_from_others; // per goal, catalog order
    std::vector< bool > self_reachable;             // per goal

    bool operator==( const theory_summary& ) const = default;
};

struct experiment_summary
{
    std::size_t runs = 0;
    std::vector< theory_summary > theories;

    bool operator==( const experiment_summary& ) const = default;
};

struct experiment_report
{
    theory_source source = theory_source::listing;
    semantics_config config;
    std::uint32_t horizon = 6;
    unsigned jobs = 1;
    std::vector< experiment_row > rows; // ordered by (init, goal, theory)
    double total_ms = 0.0;

    [[nodiscard]] experiment_summary summary() const;
    [[nodiscard]] std::string csv() const;
    [[nodiscard]] nlohmann::ordered_json summary_json() const;
    [[nodiscard]] std::vector< trajectory > witnesses( std::string_view theory ) const;
};

inline constexpr int experiment_schema_version = 1;

// The 16 x 16 grid for each builtin theory from `source`; 512 plans for
// the default pair.
[[nodiscard]] experiment_report run_experiment( theory_source source, const semantics_config& config,
                                                std::uint32_t horizon = 6, unsigned jobs = 1,
                                                const std::vector< std::string >& theories = { "HER", "UER" } );

// Recomputes the summary counts from CSV text written by experiment_report::csv().
[[nodiscard]] experiment_summary summary_from_csv( const std::string& csv );

struct discrepancy_config
{
    theory_source source = theory_source::listing;
    semantics_config config;

    [[nodiscard]] std::string name() const; // e.g. listing/as-written/holding
};

// The eight combinations of source, orientation and firing.
[[nodiscard]] std::vector< discrepancy_config > discrepancy_configs();

struct published_row
{
    std::string table; // "3", "4" or "5"
    std::string theory;
    std::string init_label;
    std::string goal_label;
    std::string init_tuple; // bare form, e.g. "hloh"
    std::string goal_tuple;
    bool sat = false;
};

// The sampled published planning rows.
[[nodiscard]] const std::vector< published_row >& published_rows();

struct discrepancy_row
{
    published_row row;
    std::vector< bool > sat; // per configuration
};

struct conflict_check
{
    std::string name;
    std::string description;
    bool detected = false;
};

struct discrepancy_report
{
    std::uint32_t horizon = 6;
    std::vector< discrepancy_config > configs;
    // Dialogue transitions: "V"/"P" per transition, HER then UER.
    std::vector< std::string > dialogue_her;
    std::vector< std::string > dialogue_uer;
    std::vector< bool > dialogue_match; // per configuration
    std::vector< discrepancy_row > rows;
    std::vector< std::size_t > rows_matched; // per configuration
    std::vector< conflict_check > conflicts;
    std::vector< std::string > notes;

    [[nodiscard]] std::vector< std::string > dialogue_matching_configs() const;
    [[nodiscard]] bool dialogue_unique_listing_holding() const;
    [[nodiscard]] std::string text() const;
    [[nodiscard]] nlohmann::ordered_json json() const;
};

// Published dialogue verdicts: HER violates only the first transition, UER
// violates all six.
inline constexpr std::array< bool, 6 > published_dialogue_her = { false, true, true, true, true, true };
inline constexpr std::array< bool, 6 > published_dialogue_uer = { false, false, false, false, false, false };

// The dialogue domain and its trajectory, the unique model of
// dialogue.cmt / dialogue.cmto at horizon 6.
[[nodiscard]] const compiled_domain& dialogue_domain();
[[nodiscard]] trajectory dialogue_trajectory();

[[nodiscard]] discrepancy_report make_discrepancy_report( unsigned jobs = 1 );

} // namespace cmt
