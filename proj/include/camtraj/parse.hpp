#pragma once

#include <map>
#include <string>
#include <vector>

#include "camtraj/dmr.hpp"

namespace camtraj {

// Scheduling defaults for clauses that omit an explicit time range.
struct ParserDefaults {
    double move_duration = 1.0;    // seconds
    double rotate_duration = 0.5;  // seconds, rotation-only clauses
    double rotate_degrees = 45.0;  // magnitude when no "by N degrees" given
};

// Compiles one camera-instruction description into a script. Clauses are
// separated by '.', ';' or "then"; clauses without explicit times are
// scheduled back to back starting at the previous clause's end. The full
// grammar is documented in docs/grammar.md. Throws ParseError (with the
// clause index and offending token) on unknown words or malformed clauses,
// and ValidationError when explicit times overlap or run backwards.
TrajectoryScript parse_instruction_text(const std::string& text,
                                        const ParserDefaults& defaults = {});

// The stable keyword table the grammar is built from; used by docs and tests.
struct GrammarKeywords {
    int version;
    std::vector<std::string> move_verbs;
    std::vector<std::string> zoom_verbs;    // verb + in/out
    std::vector<std::string> rotate_verbs;
    std::map<std::string, double> directions;      // word -> planar angle (deg)
    std::map<std::string, Speed> adverbs;          // word -> speed tier
    std::map<std::string, Rotate> rotation_words;  // word -> cw/ccw
    std::vector<std::string> time_words;
    std::vector<std::string> fillers;  // ignored at clause boundaries
};

const GrammarKeywords& grammar_keywords();

}  // namespace camtraj
