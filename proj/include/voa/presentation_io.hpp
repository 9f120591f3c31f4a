#pragma once

#include <string>

#include "voa/algebra.hpp"

namespace voa {

/// Presentation files: a line-oriented schema for generator lists and OPE
/// tables. '#' starts a comment. Layout:
///
///   schema 1
///   name <label>
///   params k a
///   root <name> <scalar expr>          (zero or more)
///   virasoro <generator>               (optional)
///   generator <name> even|odd <weight> (one per generator)
///   ope <left> <right>
///     <pole order> -> <field expr>
///   end
///
/// Pole entries use the expression grammar. Saving writes the canonical form;
/// save(load(s)) is a fixed point byte-for-byte.
struct LoadedPresentation {
    Algebra algebra;
    int schema = 1;
};

LoadedPresentation parse_presentation(const std::string& content);
LoadedPresentation load_presentation_file(const std::string& path);
/// Resolve `name`.pres against VOA_DATA_DIR (or the VOA_DATA_DIR env var).
LoadedPresentation load_named_presentation(const std::string& name);

std::string save_presentation(const Algebra& alg, int schema = 1);

/// FNV-1a hash of the canonical serialization, as fixed-width hex; reports
/// embed it so that a transcription change invalidates recorded results.
std::string presentation_hash(const Algebra& alg);
std::string data_dir();

} // namespace voa
