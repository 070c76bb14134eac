#pragma once

#include <cstdint>
#include <string>

#include "blazeclass/blaze.hpp"
#include "blazeclass/linear.hpp"

namespace blazeclass {

/// Unified little-endian model container, magic "BLZC". One format holds
/// both model kinds; matrices are stored as row-major float32 and round-trip
/// bitwise.
enum class ModelType : std::uint8_t { BLAZE = 0, LINEAR = 1 };

inline constexpr char kModelMagic[4] = {'B', 'L', 'Z', 'C'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

void save_model(const BlazeModel& model, const std::string& path);
void save_model(const LinearTextModel& model, const std::string& path);

/// Model kind stored at `path` without loading the payload.
ModelType peek_model_type(const std::string& path);

BlazeModel load_blaze_model(const std::string& path);
LinearTextModel load_linear_model(const std::string& path);

/// Inspection exports: `<token>\t<count>` and `<token>\t<df>\t<idf>`.
void write_vocab_tsv(const Vocabulary& vocab, const std::string& path);
void write_idf_tsv(const Vocabulary& vocab, const IdfTable& idf,
                   const std::string& path);

}  // namespace blazeclass
