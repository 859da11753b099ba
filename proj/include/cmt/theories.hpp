#pragma once

// The appraisal emotion instantiation: the four AE classes, the emotion
// catalog, the hedonic (HER) and utilitarian (UER) forbids_to_cause rule
// sets from both of their published forms, invariant evaluators and a
// per-transition judgment that cites the rules that fired.

#include "cmt/engine.hpp"

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmt
{

// Shipped fixture files, compiled into the library.
// Known names: ae.cmt, her_listing.cmt, uer_listing.cmt, her_definition.cmt,
// uer_definition.cmt, dialogue.cmt, dialogue.cmto.
[[nodiscard]] std::string_view fixture_text( std::string_view name );
[[nodiscard]] std::vector< std::string_view > fixture_names();

enum class theory_source
{
    definition, // rule form, HER 1..16 / UER 1..23
    listing,    // one rule per integrity constraint of the ASP encoding
    custom
};

[[nodiscard]] const char* to_string( theory_source s );
[[nodiscard]] std::optional< theory_source > parse_theory_source( std::string_view text );

class unknown_theory : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct theory_spec
{
    std::string name; // "HER", "UER" or a custom name
    theory_source source = theory_source::custom;
    std::vector< law::forbids_to_cause > rules; // schema view, ids 1..n

    // Guard-free view: every value guard on the condition side is replaced
    // by one rule per admissible value. Ids are renumbered 1..n.
    [[nodiscard]] std::vector< law::forbids_to_cause > expanded( const domain_description& domain ) const;
};

// name is matched case-insensitively against "her" / "uer".
[[nodiscard]] theory_spec builtin_theory( std::string_view name, theory_source source );

// A custom theory from a fragment of forbids_to_cause laws.
[[nodiscard]] theory_spec load_theory( std::string_view text, std::string name, std::string file = {} );

// The AE domain: classes ne, go, ac, co and one set-action per value.
[[nodiscard]] const domain_description& ae_domain();

// Copy of `domain` with the theories' rules appended as forbids laws.
[[nodiscard]] domain_description attach( domain_description domain, const std::vector< theory_spec >& theories );

struct emotion
{
    std::string_view label;
    std::array< std::string_view, 4 > values; // ne, go, ac, co
};

[[nodiscard]] const std::array< emotion, 16 >& emotion_catalog();

// Both functions use the slot layout of any domain that declares the AE
// classes (environment fluents, if any, are ignored / set false).
[[nodiscard]] std::optional< std::string > label_state( const compiled_domain& domain, const state& s );
[[nodiscard]] std::optional< state > state_of_label( const compiled_domain& domain, std::string_view label );

// (h,l,o,h) style tuple for a state of an AE domain.
[[nodiscard]] std::string short_tuple( const compiled_domain& domain, const state& s );

// Inverse of short_tuple; also accepts the bare form "hloh". Letters:
// l/u/h for the ordered classes, s/o/e/u for ac.
[[nodiscard]] std::optional< state > state_of_tuple( const compiled_domain& domain, std::string_view tuple );

struct fired_rule
{
    std::string theory;
    int rule_id = 0;
    std::string forbidden;               // e.g. f(ne,high)
    std::vector< std::string > conditions; // condition side under the configuration
};

struct transition_judgment
{
    bool pass = true;
    std::vector< fired_rule > fired;
    semantics_config config;
};

// Judges explicit state pairs against a fixed set of theories. Building
// the checker compiles the AE classes together with the rules once.
class transition_checker
{
public:
    transition_checker( std::vector< theory_spec > theories, semantics_config config,
                        const domain_description& base = ae_domain() );

    [[nodiscard]] transition_judgment judge( const state& s, const state& next ) const;
    [[nodiscard]] const compiled_domain& domain() const { return *_domain; }
    [[nodiscard]] const semantics_config& config() const { return _config; }

private:
    std::vector< theory_spec > _theories;
    semantics_config _config;
    std::shared_ptr< const compiled_domain > _domain;
};

[[nodiscard]] transition_judgment check_transition( const theory_spec& spec, const semantics_config& config,
                                                    const state& s, const state& next );

// Swaps left and right of every rule; used to relate the two orientations.
[[nodiscard]] theory_spec swap_sides( theory_spec spec );

enum class invariant
{
    ei_her,
    ei_uer
};

struct invariant_result
{
    bool holds = true;
    std::optional< std::size_t > first_violation;
};

// EI_HER: ne <= go in every state s_i with i >= 1.
// EI_UER: ne = high, go <= ne, co = high and ac not in {other, undecided}
// in every state s_i with i >= 1.
[[nodiscard]] bool invariant_state_holds( invariant which, const compiled_domain& domain, const state& s );
[[nodiscard]] invariant_result eval_invariant( invariant which, const compiled_domain& domain,
                                               const std::vector< state >& states );

} // namespace cmt
