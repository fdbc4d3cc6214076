#include "stag/morph.hpp"

#include <cctype>
#include <sstream>

#include "stag/error.hpp"

namespace stag {

namespace {

Token make_token(std::string_view surface, std::string stem,
                 std::optional<std::string> particle, const ParticleTable& particles) {
  Token token;
  token.surface = std::string(surface);
  token.stem = std::move(stem);
  if (particle) {
    token.case_label = particles.find(*particle)->second;
    token.particle = std::move(particle);
  }
  return token;
}

}  // namespace

Token segment_token(std::string_view token, const ParticleTable& particles,
                    const AnchorIndex& anchors) {
  if (token.empty()) throw Error(ErrorKind::malformed_token, "empty token");

  if (auto hyphen = token.rfind('-'); hyphen != std::string_view::npos) {
    std::string_view stem = token.substr(0, hyphen);
    std::string_view suffix = token.substr(hyphen + 1);
    if (particles.find(suffix) == particles.end()) {
      throw Error(ErrorKind::unknown_particle,
                  "unknown particle \"" + std::string(suffix) + "\" in \"" + std::string(token) + "\"");
    }
    if (stem.empty()) {
      throw Error(ErrorKind::malformed_token, "no stem before particle in \"" + std::string(token) + "\"");
    }
    return make_token(token, std::string(stem), std::string(suffix), particles);
  }

  if (anchors.find(token) != anchors.end()) return make_token(token, std::string(token), {}, particles);

  std::string_view best;
  for (const auto& [form, label] : particles) {
    if (form.size() < token.size() && form.size() > best.size() &&
        token.substr(token.size() - form.size()) == form) {
      best = form;
    }
  }
  if (!best.empty()) {
    return make_token(token, std::string(token.substr(0, token.size() - best.size())),
                      std::string(best), particles);
  }
  return make_token(token, std::string(token), {}, particles);
}

Sentence tokenize(std::string_view sentence, const ParticleTable& particles,
                  const AnchorIndex& anchors) {
  Sentence out;
  std::string text(sentence);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (!text.empty() && text.back() == '.') {
    text.pop_back();
    out.terminator = ".";
  }
  std::istringstream words(text);
  std::string word;
  while (words >> word) out.tokens.push_back(segment_token(word, particles, anchors));
  if (out.tokens.empty()) throw Error(ErrorKind::empty_input, "empty input sentence");
  return out;
}

std::vector<std::string> lex_sequence(std::span<const Token> tokens) {
  std::vector<std::string> lex;
  for (const Token& token : tokens) {
    lex.push_back(token.stem);
    if (token.particle) lex.push_back(*token.particle);
  }
  return lex;
}

std::string join_tokens(std::span<const Token> tokens) {
  std::string out;
  for (const Token& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token.stem;
    if (token.particle) out += "-" + *token.particle;
  }
  return out;
}

}  // namespace stag
