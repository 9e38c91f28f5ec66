#include "vsd/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "vsd/error.hpp"

namespace vsd {

using ojson = nlohmann::ordered_json;

std::string to_hex(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

namespace {

ojson kernel_to_json(const KernelSpec& k) {
  ojson j;
  j["type"] = std::string(to_string(k.kind));
  if (k.kind == KernelSpec::Kind::Rbf) j["gamma"] = k.gamma;
  if (k.kind == KernelSpec::Kind::Poly) {
    j["degree"] = k.degree;
    j["gamma"] = k.gamma;
    j["coef0"] = k.coef0;
  }
  return j;
}

KernelSpec kernel_from_json(const ojson& j) {
  const auto kind = parse_kernel_kind(j.at("type").get<std::string>());
  if (!kind) throw Error(Errc::Corrupt, "unknown kernel type");
  KernelSpec k;
  k.kind = *kind;
  if (k.kind != KernelSpec::Kind::Linear) k.gamma = j.at("gamma").get<double>();
  if (k.kind == KernelSpec::Kind::Poly) {
    k.degree = j.at("degree").get<int>();
    k.coef0 = j.at("coef0").get<double>();
  }
  k.validate();
  return k;
}

ojson featurizer_to_json(const Featurizer& f) {
  ojson j;
  if (const auto* bow = f.bow()) {
    j["kind"] = "bow";
    j["mode"] = std::string(to_string(bow->mode));
    j["vocabulary"] = {{"n_docs", bow->vocab.n_docs()},
                       {"terms", bow->vocab.terms()},
                       {"doc_freq", bow->vocab.doc_freqs()}};
  } else {
    const auto* emb = f.embedding();
    j["kind"] = "embedding";
    j["path"] = emb->path;
    j["dim"] = emb->dim;
    j["content_hash"] = to_hex(emb->content_hash);
  }
  return j;
}

std::filesystem::path resolve_embeddings(const std::string& recorded,
                                         const ModelLoadOptions& options) {
  if (options.embeddings_path) return *options.embeddings_path;
  std::filesystem::path p(recorded);
  if (p.is_relative() && !std::filesystem::exists(p) && !options.base_dir.empty()) {
    const auto alt = options.base_dir / p;
    if (std::filesystem::exists(alt)) return alt;
  }
  return p;
}

Featurizer featurizer_from_json(const ojson& j, const ModelLoadOptions& options) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "bow") {
    const auto mode = parse_bow_mode(j.at("mode").get<std::string>());
    if (!mode) throw Error(Errc::Corrupt, "unknown bag-of-words mode");
    const auto& v = j.at("vocabulary");
    return Featurizer(BowFeaturizer{
        *mode, Vocabulary(v.at("terms").get<std::vector<std::string>>(),
                          v.at("doc_freq").get<std::vector<std::size_t>>(),
                          v.at("n_docs").get<std::size_t>())});
  }
  if (kind == "embedding") {
    EmbeddingFeaturizer emb;
    emb.path = j.at("path").get<std::string>();
    emb.dim = j.at("dim").get<std::size_t>();
    emb.content_hash = std::stoull(j.at("content_hash").get<std::string>(), nullptr, 16);
    if (options.load_embeddings) {
      auto table = std::make_shared<EmbeddingTable>(
          load_embeddings(resolve_embeddings(emb.path, options)));
      if (table->dim() != emb.dim) {
        throw Error(Errc::FeaturizerMismatch,
                    "embedding file has dimension " + std::to_string(table->dim()) +
                        ", model expects " + std::to_string(emb.dim));
      }
      if (table->content_hash() != emb.content_hash) {
        throw Error(Errc::FeaturizerMismatch,
                    "embedding file content differs from the one used in training");
      }
      emb.table = std::move(table);
    }
    return Featurizer(std::move(emb));
  }
  throw Error(Errc::Corrupt, "unknown featurizer kind '" + kind + "'");
}

bool mostly_zero(const std::vector<FeatureVector>& rows, std::size_t dim) {
  std::size_t nonzero = 0;
  for (const auto& r : rows) {
    for (double v : r) nonzero += v != 0.0 ? 1 : 0;
  }
  return nonzero * 2 < rows.size() * dim;
}

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  const auto& svm = model.svm;
  ojson doc;
  doc["format"] = "vsd-model";
  doc["format_version"] = kModelFormatVersion;

  ojson prep;
  prep["stopwords"] = ojson::array();
  for (const auto& w : model.stops.words()) prep["stopwords"].push_back(w);
  prep["stem_rules"] = ojson::array();
  for (const auto& r : model.stem_rules.rules()) {
    prep["stem_rules"].push_back({r.pass, r.suffix, r.min_stem_len, r.replacement});
  }
  doc["preprocessing"] = std::move(prep);
  doc["featurizer"] = featurizer_to_json(model.featurizer);
  doc["kernel"] = kernel_to_json(svm.kernel);
  doc["C"] = svm.cost;
  doc["feature_dim"] = svm.feature_dim;
  doc["bias"] = svm.bias;
  doc["dual_coefs"] = svm.dual_coefs;

  ojson svs;
  if (mostly_zero(svm.support_vectors, svm.feature_dim)) {
    svs["encoding"] = "sparse";
    svs["rows"] = ojson::array();
    for (const auto& row : svm.support_vectors) {
      ojson idx = ojson::array();
      ojson val = ojson::array();
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] != 0.0) {
          idx.push_back(k);
          val.push_back(row[k]);
        }
      }
      svs["rows"].push_back({std::move(idx), std::move(val)});
    }
  } else {
    svs["encoding"] = "dense";
    svs["rows"] = svm.support_vectors;
  }
  doc["support_vectors"] = std::move(svs);

  const auto& meta = model.metadata;
  doc["training_metadata"] = {{"seed", meta.seed},
                              {"date", meta.date},
                              {"corpus_hash", meta.corpus_hash},
                              {"train_fraction", meta.train_fraction},
                              {"n_train", meta.n_train},
                              {"n_synthetic", meta.n_synthetic},
                              {"converged", svm.converged},
                              {"iterations", svm.iterations}};
  return doc.dump() + "\n";
}

TrainedModel parse_model(std::string_view text, const ModelLoadOptions& options) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const ojson::exception& e) {
    throw Error(Errc::Corrupt, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "vsd-model") {
      throw Error(Errc::Corrupt, "not a vsd model document");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(Errc::VersionMismatch, "model format_version " + std::to_string(version) +
                                             ", this build reads " +
                                             std::to_string(kModelFormatVersion));
    }

    TrainedModel model;
    const auto& prep = doc.at("preprocessing");
    std::set<std::string, std::less<>> words;
    for (const auto& w : prep.at("stopwords")) words.insert(w.get<std::string>());
    model.stops = StopList(std::move(words));
    std::vector<StemRule> rules;
    for (const auto& r : prep.at("stem_rules")) {
      rules.push_back({r.at(0).get<std::string>(), r.at(1).get<std::string>(),
                       r.at(2).get<std::size_t>(), r.at(3).get<std::string>()});
    }
    model.stem_rules = StemRules(std::move(rules));
    model.featurizer = featurizer_from_json(doc.at("featurizer"), options);

    auto& svm = model.svm;
    svm.kernel = kernel_from_json(doc.at("kernel"));
    svm.cost = doc.at("C").get<double>();
    svm.feature_dim = doc.at("feature_dim").get<std::size_t>();
    svm.bias = doc.at("bias").get<double>();
    svm.dual_coefs = doc.at("dual_coefs").get<std::vector<double>>();
    const auto& svs = doc.at("support_vectors");
    const auto encoding = svs.at("encoding").get<std::string>();
    for (const auto& row : svs.at("rows")) {
      if (encoding == "dense") {
        svm.support_vectors.push_back(row.get<FeatureVector>());
      } else if (encoding == "sparse") {
        FeatureVector dense(svm.feature_dim, 0.0);
        const auto idx = row.at(0).get<std::vector<std::size_t>>();
        const auto val = row.at(1).get<std::vector<double>>();
        if (idx.size() != val.size()) throw Error(Errc::Corrupt, "sparse row length mismatch");
        for (std::size_t k = 0; k < idx.size(); ++k) {
          if (idx[k] >= svm.feature_dim) throw Error(Errc::Corrupt, "sparse index out of range");
          dense[idx[k]] = val[k];
        }
        svm.support_vectors.push_back(std::move(dense));
      } else {
        throw Error(Errc::Corrupt, "unknown support vector encoding '" + encoding + "'");
      }
      if (svm.support_vectors.back().size() != svm.feature_dim) {
        throw Error(Errc::Corrupt, "support vector dimension mismatch");
      }
    }
    if (svm.support_vectors.size() != svm.dual_coefs.size()) {
      throw Error(Errc::Corrupt, "support vector and coefficient counts differ");
    }
    if (model.featurizer.dim() != svm.feature_dim) {
      throw Error(Errc::Corrupt, "featurizer dimension differs from feature_dim");
    }

    const auto& meta = doc.at("training_metadata");
    model.metadata.seed = meta.at("seed").get<std::uint64_t>();
    model.metadata.date = meta.at("date").get<std::string>();
    model.metadata.corpus_hash = meta.at("corpus_hash").get<std::string>();
    model.metadata.train_fraction = meta.at("train_fraction").get<double>();
    model.metadata.n_train = meta.at("n_train").get<std::size_t>();
    model.metadata.n_synthetic = meta.at("n_synthetic").get<std::size_t>();
    svm.converged = meta.at("converged").get<bool>();
    svm.iterations = meta.at("iterations").get<std::size_t>();
    return model;
  } catch (const ojson::exception& e) {
    throw Error(Errc::Corrupt, std::string("model document is incomplete: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidArgument) throw Error(Errc::Corrupt, e.what());
    throw;
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  const std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write model file " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "write failure on " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path, ModelLoadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (options.base_dir.empty()) options.base_dir = path.parent_path();
  return parse_model(buf.str(), options);
}

}  // namespace vsd
