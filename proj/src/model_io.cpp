#include "blazeclass/model_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "blazeclass/errors.hpp"

namespace blazeclass {

namespace {

class BinaryWriter {
 public:
  BinaryWriter(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) {
      throw std::runtime_error(path + ": cannot open file for writing");
    }
  }

  void bytes(const void* data, std::size_t len) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v));
    u32(static_cast<std::uint32_t>(v >> 32));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void floats(const std::vector<float>& v) {
    if constexpr (std::endian::native == std::endian::little) {
      bytes(v.data(), v.size() * sizeof(float));
    } else {
      for (float x : v) f32(x);
    }
  }

  void close() {
    out_.close();
    if (!out_) {
      throw std::runtime_error(path_ + ": write failed");
    }
  }

 private:
  std::string path_;
  std::ofstream out_;
};

class BinaryReader {
 public:
  BinaryReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) {
      throw std::runtime_error(path + ": cannot open file");
    }
  }

  const std::string& path() const { return path_; }

  void bytes(void* data, std::size_t len) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len) {
      throw TruncatedError(path_);
    }
  }
  /// Magic probe: reads up to 4 bytes without the truncation error, so a
  /// short or foreign file reports "not a model file".
  bool try_magic() {
    char m[4];
    in_.read(m, 4);
    return in_.gcount() == 4 && std::memcmp(m, kModelMagic, 4) == 0;
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::uint64_t u64() {
    std::uint64_t lo = u32();
    std::uint64_t hi = u32();
    return lo | (hi << 32);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    std::uint32_t len = u32();
    std::string s(len, '\0');
    if (len > 0) bytes(s.data(), len);
    return s;
  }
  void floats(std::vector<float>& v, std::size_t count) {
    v.resize(count);
    if constexpr (std::endian::native == std::endian::little) {
      bytes(v.data(), count * sizeof(float));
    } else {
      for (std::size_t i = 0; i < count; ++i) v[i] = f32();
    }
  }

 private:
  std::string path_;
  std::ifstream in_;
};

void write_header(BinaryWriter& w, ModelType type,
                  const std::vector<std::string>& class_names) {
  w.bytes(kModelMagic, 4);
  w.u32(kModelFormatVersion);
  w.u8(static_cast<std::uint8_t>(type));
  w.u32(static_cast<std::uint32_t>(class_names.size()));
  for (const std::string& name : class_names) w.str(name);
}

ModelType read_header(BinaryReader& r, std::vector<std::string>& class_names) {
  if (!r.try_magic()) {
    throw BadMagicError(r.path());
  }
  std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) {
    throw BadVersionError(r.path(), version);
  }
  std::uint8_t type = r.u8();
  if (type > 1) {
    throw ModelIoError(r.path() + ": unknown model type byte " +
                       std::to_string(type));
  }
  std::uint32_t n_classes = r.u32();
  class_names.clear();
  for (std::uint32_t i = 0; i < n_classes; ++i) class_names.push_back(r.str());
  return static_cast<ModelType>(type);
}

void write_vocab(BinaryWriter& w, const Vocabulary& vocab) {
  w.u64(vocab.size());
  w.u32(vocab.min_count());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    w.str(vocab.token(i));
    w.u64(vocab.count(i));
  }
}

Vocabulary read_vocab(BinaryReader& r) {
  Vocabulary vocab;
  std::uint64_t size = r.u64();
  vocab.set_min_count(r.u32());
  for (std::uint64_t i = 0; i < size; ++i) {
    std::string token = r.str();
    std::uint64_t count = r.u64();
    vocab.append(token, count);
  }
  return vocab;
}

void write_matrix(BinaryWriter& w, const Matrix& m) {
  w.u64(m.rows());
  w.u64(m.cols());
  w.floats(m.data());
}

Matrix read_matrix(BinaryReader& r) {
  std::uint64_t rows = r.u64();
  std::uint64_t cols = r.u64();
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  r.floats(m.data(), static_cast<std::size_t>(rows * cols));
  return m;
}

}  // namespace

void save_model(const BlazeModel& model, const std::string& path) {
  BinaryWriter w(path);
  write_header(w, ModelType::BLAZE, model.class_names);
  const BlazeConfig& c = model.config;
  w.u32(c.dim);
  w.f64(c.lr);
  w.u32(c.epochs);
  w.u32(c.min_count);
  w.u32(c.word_ngrams);
  w.u32(c.minn);
  w.u32(c.maxn);
  w.u32(c.n_buckets);
  w.u8(c.early_stopping ? 1 : 0);
  w.u32(c.patience);
  w.u32(c.workers);
  w.u64(c.seed);
  write_vocab(w, model.vocab);
  write_matrix(w, model.input);
  write_matrix(w, model.output);
  w.close();
}

void save_model(const LinearTextModel& model, const std::string& path) {
  BinaryWriter w(path);
  write_header(w, ModelType::LINEAR, model.model.class_names);
  const LinearConfig& c = model.model.config;
  w.f64(c.l2);
  w.u32(c.epochs);
  w.f64(c.lr);
  w.u64(c.seed);
  w.u8(c.normalize_features ? 1 : 0);
  w.u32(model.ngram_max);
  w.u8(static_cast<std::uint8_t>(model.features));
  write_vocab(w, model.vocab);
  w.u64(model.idf.n_documents);
  for (std::uint64_t df : model.idf.doc_frequency) w.u64(df);
  w.u64(model.model.dimension);
  w.u32(static_cast<std::uint32_t>(model.model.num_classes()));
  w.floats(model.model.weights);
  std::vector<float> bias(model.model.bias.begin(), model.model.bias.end());
  w.floats(bias);
  w.close();
}

ModelType peek_model_type(const std::string& path) {
  BinaryReader r(path);
  std::vector<std::string> names;
  return read_header(r, names);
}

BlazeModel load_blaze_model(const std::string& path) {
  BinaryReader r(path);
  BlazeModel model;
  if (read_header(r, model.class_names) != ModelType::BLAZE) {
    throw ModelIoError(path + ": container holds a LINEAR model");
  }
  BlazeConfig& c = model.config;
  c.dim = r.u32();
  c.lr = r.f64();
  c.epochs = r.u32();
  c.min_count = r.u32();
  c.word_ngrams = r.u32();
  c.minn = r.u32();
  c.maxn = r.u32();
  c.n_buckets = r.u32();
  c.early_stopping = r.u8() != 0;
  c.patience = r.u32();
  c.workers = r.u32();
  c.seed = r.u64();
  model.vocab = read_vocab(r);
  model.input = read_matrix(r);
  model.output = read_matrix(r);
  if (model.input.rows() != model.vocab.size() + c.n_buckets ||
      model.input.cols() != c.dim ||
      model.output.rows() != model.class_names.size() ||
      model.output.cols() != c.dim) {
    throw ModelIoError(path + ": inconsistent matrix shapes");
  }
  return model;
}

LinearTextModel load_linear_model(const std::string& path) {
  BinaryReader r(path);
  LinearTextModel model;
  if (read_header(r, model.model.class_names) != ModelType::LINEAR) {
    throw ModelIoError(path + ": container holds a BLAZE model");
  }
  LinearConfig& c = model.model.config;
  c.l2 = r.f64();
  c.epochs = r.u32();
  c.lr = r.f64();
  c.seed = r.u64();
  c.normalize_features = r.u8() != 0;
  model.ngram_max = r.u32();
  std::uint8_t kind = r.u8();
  if (kind > 2) {
    throw ModelIoError(path + ": unknown feature kind byte " +
                       std::to_string(kind));
  }
  model.features = static_cast<FeatureKind>(kind);
  model.vocab = read_vocab(r);
  model.idf.n_documents = r.u64();
  model.idf.doc_frequency.resize(model.vocab.size());
  for (std::uint64_t& df : model.idf.doc_frequency) df = r.u64();
  model.idf.idf.resize(model.vocab.size());
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    model.idf.idf[i] =
        std::log(static_cast<double>(model.idf.n_documents) /
                 (1.0 + static_cast<double>(model.idf.doc_frequency[i])));
  }
  model.model.dimension = static_cast<std::uint32_t>(r.u64());
  std::uint32_t k = r.u32();
  r.floats(model.model.weights,
           static_cast<std::size_t>(k) * model.model.dimension);
  std::vector<float> bias;
  r.floats(bias, k);
  model.model.bias = bias;
  if (model.model.class_names.size() != k) {
    throw ModelIoError(path + ": inconsistent class count");
  }
  return model;
}

void write_vocab_tsv(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << vocab.token(i) << '\t' << vocab.count(i) << '\n';
  }
}

void write_idf_tsv(const Vocabulary& vocab, const IdfTable& idf,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  char buf[32];
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", idf.idf[i]);
    out << vocab.token(i) << '\t' << idf.doc_frequency[i] << '\t' << buf
        << '\n';
  }
}

}  // namespace blazeclass
