#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spm/graph.hpp"
#include "spm/partition.hpp"

namespace spm {

enum class DatasetId { karate, adjnoun_negated, illustrative_fig1, slovene, gahuku_gama };

/// The data files backing a dataset were not present when the library was built.
class DatasetUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    DatasetId id = DatasetId::karate;
    SignedGraph graph;
    std::optional<Partition> truth;
    std::string description;
};

std::vector<std::string_view> dataset_names();
std::string_view to_string(DatasetId id);

/// Throws PreconditionError for an unknown name.
DatasetId parse_dataset(std::string_view name);

/// Data files each dataset is built from, relative to the data directory.
std::vector<std::string_view> dataset_files(DatasetId id);

bool dataset_available(DatasetId id);

/// Builds a bundled dataset from the data files embedded at build time.
/// Throws DatasetUnavailable when a required file was not bundled.
Dataset bundled_dataset(DatasetId id);
Dataset bundled_dataset(std::string_view name);

/// Embedded file contents by file name, if bundled.
std::optional<std::string_view> embedded_file(std::string_view name);

}  // namespace spm
