#pragma once

// Explicit-state operational semantics: activation sets, the successor
// function, bounded trajectory enumeration, trajectory models, consistency,
// planning and query evaluation.

#include "cmt/state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cmt
{

// Which side of `L forbids_to_cause R` is the condition at time t.
// as_written: L at t, R forbidden at t+1. reversed: R at t, L forbidden.
enum class orientation
{
    as_written,
    reversed
};

// holding: a forbidden fluent fires whenever it holds at t+1.
// onset: only when it holds at t+1 and did not hold at t.
enum class firing
{
    holding,
    onset
};

enum class action_policy
{
    singleton_or_empty,
    any_subset
};

struct semantics_config
{
    cmt::orientation orientation = orientation::as_written;
    cmt::firing firing = firing::holding;
    action_policy policy = action_policy::singleton_or_empty;

    bool operator==( const semantics_config& ) const = default;
};

[[nodiscard]] const char* to_string( orientation o );
[[nodiscard]] const char* to_string( firing f );
[[nodiscard]] const char* to_string( action_policy p );
[[nodiscard]] std::optional< orientation > parse_orientation( std::string_view text );
[[nodiscard]] std::optional< firing > parse_firing( std::string_view text );
[[nodiscard]] std::optional< action_policy > parse_action_policy( std::string_view text );

using action_set = std::vector< action_id >; // sorted, duplicate free

struct forbidden_fluent
{
    atom fluent;
    std::size_t rule = 0; // index into compiled_domain::forbids()
};

struct activation_profile
{
    action_set triggered;          // A_T
    action_set trigger_blocked;    // overline A_T
    action_set allowed;            // A_A
    action_set allow_blocked;      // overline A_A
    action_set inhibited;          // A_I
    action_set facilitated;        // A_FAC
    action_set facilitate_blocked; // overline A_FAC
    action_set contravened;        // A_INT
    // F(s). Under onset firing a listed fluent only counts when it is newly
    // true in the successor; step() applies that test.
    std::vector< forbidden_fluent > forbidden_next;
};

[[nodiscard]] activation_profile compute_activation( const compiled_domain& domain, const state& s,
                                                     const semantics_config& config );

enum class violation_kind
{
    unknown_action,
    condition_violated, // trajectory conditions 2..9, see `condition`
    contradictory_effects,
    not_a_state,
    forbidden_fluent // condition 10
};

struct violation
{
    violation_kind kind = violation_kind::condition_violated;
    int condition = 0; // trajectory condition number (2..10), 0 if not applicable
    std::string message;
    std::optional< std::size_t > rule; // index into compiled_domain::forbids() for forbidden_fluent
};

enum class cause_kind
{
    completion,  // initial state value not fixed by an observation
    observation, // initial state value fixed by an observation
    inertia,
    dynamic_law,
    static_law,
    default_value
};

[[nodiscard]] const char* to_string( cause_kind c );

struct provenance_entry
{
    slot_id slot = 0;
    cause_kind cause = cause_kind::inertia;
    std::size_t law = 0; // index into description().laws for law causes
};

struct step_result
{
    std::optional< state > next;
    std::vector< violation > violations;
    std::optional< state > successor;           // the computed s' when only conditions 2..10 failed
    std::vector< provenance_entry > provenance; // one entry per slot whenever s' could be computed

    [[nodiscard]] bool ok() const { return next.has_value(); }
};

// One transition (s, A, s'). Reports every violated condition, not only the
// first; when the successor itself cannot be built (contradictory effects)
// condition 10 is not evaluated.
[[nodiscard]] step_result step( const compiled_domain& domain, const state& s, const action_set& actions,
                                const semantics_config& config );

// Condition 10 alone, for an explicit pair of states.
[[nodiscard]] std::vector< forbidden_fluent > fired_forbids( const compiled_domain& domain,
                                                             const semantics_config& config, const state& s,
                                                             const state& next );

struct trajectory
{
    std::vector< state > states;
    std::vector< action_set > actions; // actions[i] leads from states[i] to states[i+1]
    std::vector< std::vector< provenance_entry > > provenance;

    [[nodiscard]] std::size_t length() const { return actions.size(); }
};

// Candidate action sets for one step, in enumeration order: the empty set
// first, then singletons (or all subsets by increasing bitmask) in
// declaration order. Only sets containing `required` are produced.
[[nodiscard]] std::vector< action_set > candidate_action_sets( const compiled_domain& domain,
                                                               const action_set& required, action_policy policy );

using trajectory_visitor = std::function< bool( const trajectory& ) >; // return false to stop

// Depth-first enumeration of every trajectory of exactly `horizon` steps
// from s0. Returns the number of trajectories visited.
std::size_t trajectories( const compiled_domain& domain, const state& s0, std::uint32_t horizon,
                          const semantics_config& config, const trajectory_visitor& visit );

// All initial states (total, closed under static laws) consistent with the
// time-0 fluent observations.
[[nodiscard]] std::vector< state > initial_states( const compiled_domain& domain,
                                                   const std::vector< observation >& observations );

// Trajectory models of (D, O): trajectories from every admissible initial
// state that satisfy all observations.
std::size_t trajectory_models( const compiled_domain& domain, const std::vector< observation >& observations,
                               std::uint32_t horizon, const semantics_config& config,
                               const trajectory_visitor& visit );

struct consistency_result
{
    bool consistent = false;
    std::optional< trajectory > witness;
    std::vector< diagnostic > diagnostics;
};

[[nodiscard]] consistency_result consistent( const compiled_domain& domain,
                                             const std::vector< observation >& observations, std::uint32_t horizon,
                                             const semantics_config& config );

struct plan_result
{
    bool sat = false;
    std::optional< trajectory > plan;
    std::vector< diagnostic > diagnostics;
};

// Goal-at-horizon planning by layered breadth-first search over states.
// Reconstruction prefers staying in a state over an earlier change, so
// plans make their changes first and pad with self-loops at the end.
[[nodiscard]] plan_result plan( const compiled_domain& domain, const std::vector< observation >& observations,
                                const literal_list& goal, std::uint32_t horizon, const semantics_config& config );

enum class query_mode
{
    skeptical,
    credulous
};

[[nodiscard]] const char* to_string( query_mode m );

struct query_result
{
    bool holds = false;
    bool no_models = false;
    std::optional< trajectory > witness; // credulous: satisfying model; skeptical: counterexample
    std::vector< diagnostic > diagnostics;
};

[[nodiscard]] query_result holds_query( const compiled_domain& domain, const std::vector< observation >& observations,
                                        const query& q, query_mode mode, const semantics_config& config );

// Independent straight-line check of a trajectory against conditions 1..10
// and against observations. Returns an empty list when the trajectory is a
// model.
[[nodiscard]] std::vector< std::string > check_trajectory( const compiled_domain& domain, const trajectory& t,
                                                           const semantics_config& config,
                                                           const std::vector< observation >& observations = {} );

// Recomputes per-state provenance for a bare state/action sequence.
void annotate_provenance( const compiled_domain& domain, trajectory& t, const semantics_config& config,
                          const std::vector< observation >& observations = {} );

} // namespace cmt
