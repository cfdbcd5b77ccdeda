#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgcycles/embedding.hpp"
#include "pgcycles/geometry.hpp"

namespace pgc {

/// A self-contained, re-verifiable record of one embedded cycle. The field
/// modulus travels inside the certificate, so a verifier can rebuild the
/// exact arithmetic without the producing run. Schema version "pgc-1";
/// field elements serialize as their canonical integers.
struct Certificate {
    std::string version = "pgc-1";
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint32_t q = 0;
    int n = 0;
    std::vector<std::uint32_t> modulus;  // constant term first
    int k = 0;
    std::vector<std::vector<Elem>> vertices;
    struct Edge {
        int from = 0;
        int to = 0;
        std::vector<std::vector<Elem>> line;  // RREF basis, two rows
    };
    std::vector<Edge> edges;
    struct Anchor {
        std::vector<std::vector<Elem>> basis;
        int expected_vertices = 2;
        int expected_edges = 1;
    };
    std::optional<Anchor> anchor;
    struct Provenance {
        std::string command;
        std::uint64_t seed = 0;
        std::string artifact_version;
    };
    std::optional<Provenance> provenance;
};

Certificate make_certificate(const Geometry& g, const CycleEmbedding& c,
                             const std::optional<Subspace>& anchor,
                             const std::string& command, std::uint64_t seed);

/// Deterministic UTF-8 JSON rendering (keys sorted, stable layout).
std::string certificate_to_json(const Certificate& cert);

/// Parses and schema-checks a certificate. Throws MalformedCertificate.
Certificate certificate_from_json(const std::string& text);

/// Rebuilds the geometry described by the header. Throws
/// MalformedCertificate when the header is inconsistent.
Geometry geometry_from_certificate(const Certificate& cert);

/// Reconstructs the embedded cycle (and optional anchor) for verification.
CycleEmbedding cycle_from_certificate(const Geometry& g, const Certificate& cert);
std::optional<Subspace> anchor_from_certificate(const Geometry& g, const Certificate& cert);

/// Writes text to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace pgc
