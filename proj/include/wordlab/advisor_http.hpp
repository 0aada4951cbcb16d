#pragma once

// HTTP + JSON routes for AdvisorService.
//
//   POST /sessions                 {policy_id}            -> {session_id, recommendation}
//   POST /sessions/{id}/feedback   {guess, colors[5]}     -> {state, action, word, candidates_remaining, top_candidates}
//   GET  /sessions/{id}                                   -> session snapshot
//   GET  /policies                                        -> {policies: [...]}

#include <string>

#include <httplib.h>
#include <json.hpp>

#include "wordlab/advisor.hpp"

namespace wordlab::advisor {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownPolicy: return 404;
    case ErrorCode::SessionComplete:
    case ErrorCode::Contradiction: return 409;
    default: return 400;
  }
}

inline void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

inline void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, http_status(code), json{{"error", std::string(to_string(code))}, {"message", message}});
}

inline json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("malformed JSON body: ") + e.what());
  }
}

inline Feedback parse_colors(const json& colors) {
  if (!colors.is_array() || colors.size() != kWordLength) {
    throw Error(ErrorCode::InvalidColors, "colors must be an array of exactly five tiles");
  }
  std::array<TileColor, kWordLength> tiles{};
  for (int i = 0; i < kWordLength; ++i) {
    const auto& c = colors[static_cast<std::size_t>(i)];
    auto t = c.is_string() ? parse_color(c.get<std::string>()) : std::nullopt;
    if (!t) throw Error(ErrorCode::InvalidColors, "tile " + std::to_string(i + 1) + " must be \"green\", \"yellow\" or \"gray\"");
    tiles[i] = *t;
  }
  return Feedback(tiles);
}

template <class Handler>
void guarded(httplib::Response& res, Handler&& h) {
  try {
    h();
  } catch (const Error& e) {
    send_error(res, e.code(), e.what());
  } catch (const std::exception& e) {
    send_json(res, 500, json{{"error", "Internal"}, {"message", e.what()}});
  }
}

inline void install_routes(httplib::Server& server, AdvisorService& service,
                           std::string default_policy = "default") {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/policies", [&service](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, json{{"policies", service.policy_ids()}}); });
  });

  server.Post("/sessions", [&service, default_policy](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      const std::string policy_id = body.value("policy_id", default_policy);
      const auto snap = service.create_session(policy_id);
      send_json(res, 201, json{{"session_id", snap.id},
                               {"state", state_json(snap.state)},
                               {"recommendation", recommendation_json(snap.recommendation)}});
    });
  });

  server.Post(R"(/sessions/([^/]+)/feedback)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("guess") || !body["guess"].is_string()) {
        throw Error(ErrorCode::IllegalGuess, "body needs a string 'guess'");
      }
      const auto text = body["guess"].get<std::string>();
      auto guess = Word::parse(text);
      if (!guess) throw Error(ErrorCode::IllegalGuess, "'" + text + "' is not a five-letter word");
      const Feedback fb = parse_colors(body.value("colors", json()));
      const auto snap = service.submit_feedback(req.matches[1], *guess, fb);
      send_json(res, 200, feedback_response_json(snap));
    });
  });

  server.Get(R"(/sessions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, snapshot_json(service.get_session(req.matches[1]))); });
  });
}

}  // namespace wordlab::advisor
