#include <morfwork_tools/service.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <httplib.h>
#include <json.hpp>

#include <iostream>

namespace morfwork::tools
{
	using nlohmann::json;

	namespace
	{
		Response error(int status, const std::string& message)
		{
			return { status, json{ { "error", message } }.dump() };
		}

		json conflictJson(const Conflict& c)
		{
			json features = json::array();
			for (auto& [d, v] : c.features) features.push_back({ { "dimension", d }, { "value", v } });
			return { { "features", features }, { "dimension", c.dimension }, { "values", c.values },
				{ "explanation", c.explanation } };
		}

		json readingJson(const FeatureBundle& b)
		{
			json feats = json::object();
			for (auto d : kDimensions)
				if (d != Dimension::Category && b[d]) feats[std::string(name(d))] = *b[d];
			return { { "root", b.root }, { "category", b[Dimension::Category].value_or("") }, { "suffixes", b.suffixes },
				{ "features", feats } };
		}

		std::optional<std::size_t> parseIndexParam(const std::string& s)
		{
			if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
			return static_cast<std::size_t>(std::stoul(s));
		}

		const std::string* single(const std::multimap<std::string, std::string>& params, const std::string& key)
		{
			if (params.count(key) != 1) return nullptr;
			return &params.find(key)->second;
		}
	}

	Service::Service(const Workbench& workbench, const SearchSession* session, bool asciiFold)
		: wb_(workbench), session_(session), asciiFold_(asciiFold)
	{
	}

	Response Service::handle(const std::string& path, const std::multimap<std::string, std::string>& params) const
	{
		Response r;
		try
		{
			if (path == "/api/features") r = features();
			else if (path == "/api/search") r = search(params);
			else if (path == "/api/analysis") r = analysis(params);
			else if (path == "/api/analyze") r = analyze(params);
			else if (text::startsWith(path, "/api/sentences/")) r = sentence(path.substr(15));
			else r = error(404, "no such endpoint: " + path);
		}
		catch (const InvalidQuery& e)
		{
			r = error(400, e.what());
		}
		catch (const UnknownFeatureValue& e)
		{
			r = error(422, e.what());
		}
		catch (const OutOfRange& e)
		{
			r = error(404, e.what());
		}
		catch (const NoAnalysis& e)
		{
			r = error(404, e.what());
		}
		catch (const std::exception& e)
		{
			r = error(500, e.what());
		}
		if (asciiFold_) r.body = text::asciiFold(r.body);
		return r;
	}

	Response Service::features() const
	{
		const auto vocab = wb_.vocabulary();
		const auto table = wb_.implications();
		json dims = json::array();
		for (auto d : kDimensions)
		{
			json values = json::array();
			for (auto& v : vocab.values.at(d)) values.push_back({ { "value", v }, { "display", displayValue(d, v) } });
			json entry = { { "name", std::string(name(d)) }, { "label", std::string(label(d)) }, { "values", values } };
			if (auto c = table.implied(d)) entry["implies"] = { { "category", std::string(name(*c)) } };
			dims.push_back(entry);
		}
		json suffixes = json::array();
		for (auto& m : wb_.morphotactics().morphemes())
			suffixes.push_back({ { "value", m.name }, { "display", m.name + " (" + m.formText() + ")" } });
		dims.push_back({ { "name", "suffix" }, { "label", "Suffix" }, { "values", suffixes } });
		dims.push_back({ { "name", "root" }, { "label", "Root" }, { "values", json::array() }, { "freeText", true } });
		return { 200, json{ { "dimensions", dims } }.dump() };
	}

	Response Service::search(const std::multimap<std::string, std::string>& params) const
	{
		if (!session_) return error(503, "no corpus loaded");
		std::vector<std::pair<std::string, std::string>> pairs(params.begin(), params.end());
		const auto q = Query::fromPairs(pairs);
		const auto& searcher = session_->searcher();
		auto result = searcher.search(q);
		if (auto* c = std::get_if<Conflict>(&result))
			return { 409, json{ { "error", "conflict" }, { "conflict", conflictJson(*c) } }.dump() };

		const auto expanded = std::get<Query>(searcher.expand(q));
		json query = json::object();
		for (auto d : kDimensions)
			if (expanded[d]) query[std::string(name(d))] = *expanded[d];
		if (expanded.suffix) query["suffix"] = *expanded.suffix;
		if (expanded.root) query["root"] = *expanded.root;

		json hits = json::array();
		std::size_t tokens = 0;
		for (auto& h : std::get<std::vector<SentenceHit>>(result))
		{
			const auto& toks = session_->tagged().at(h.sentenceId).sentence.tokens;
			json matches = json::array();
			for (auto t : h.matches)
				matches.push_back({ { "token", t }, { "text", toks[t].text }, { "start", toks[t].start }, { "end", toks[t].end } });
			tokens += h.matches.size();
			hits.push_back({ { "sentenceId", h.sentenceId }, { "text", h.text }, { "matches", matches } });
		}
		json body = { { "query", query },
			{ "impliedCategory", expanded.categoryImplied ? json(*expanded[Dimension::Category]) : json(nullptr) },
			{ "sentenceCount", hits.size() }, { "tokenCount", tokens }, { "hits", hits } };
		return { 200, body.dump() };
	}

	Response Service::sentence(const std::string& idText) const
	{
		if (!session_) return error(503, "no corpus loaded");
		auto id = parseIndexParam(idText);
		if (!id) return error(400, "sentence id must be a nonnegative integer");
		const auto& ts = session_->tagged().at(*id);
		json tokens = json::array();
		for (std::size_t t = 0; t < ts.sentence.tokens.size(); ++t)
		{
			const auto& tok = ts.sentence.tokens[t];
			tokens.push_back({ { "index", t }, { "text", tok.text }, { "start", tok.start }, { "end", tok.end },
				{ "analysis", ts.readings[t] ? readingJson(*ts.readings[t]) : json(nullptr) } });
		}
		return { 200, json{ { "id", *id }, { "text", ts.sentence.text }, { "tokens", tokens } }.dump() };
	}

	Response Service::analysis(const std::multimap<std::string, std::string>& params) const
	{
		if (!session_) return error(503, "no corpus loaded");
		for (auto& [k, v] : params)
			if (k != "sentence" && k != "token") return error(400, "unknown parameter '" + k + "'");
		const auto* s = single(params, "sentence");
		const auto* t = single(params, "token");
		if (!s || !t) return error(400, "need exactly one 'sentence' and one 'token' parameter");
		auto sid = parseIndexParam(*s);
		auto tid = parseIndexParam(*t);
		if (!sid || !tid) return error(400, "sentence and token must be nonnegative integers");
		const auto v = analysisView(session_->tagged(), *sid, *tid, wb_.morphotactics());
		json fields = json::array();
		for (auto& [label, value] : v.fields) fields.push_back({ { "label", label }, { "value", value } });
		return { 200, json{ { "sentenceId", *sid }, { "token", *tid }, { "text", v.token }, { "lexicalGloss", v.lexicalGloss },
						  { "fields", fields } }.dump() };
	}

	Response Service::analyze(const std::multimap<std::string, std::string>& params) const
	{
		const auto* w = single(params, "word");
		if (!w || params.size() != 1 || w->empty()) return error(400, "need exactly one non-empty 'word' parameter");
		std::vector<Parse> parses;
		try
		{
			parses = wb_.analyzer().analyze(*w);
		}
		catch (const UnknownWord& e)
		{
			return error(404, e.what());
		}
		json out = json::array();
		for (auto& p : parses)
		{
			json r = readingJson(p.features);
			r["signature"] = p.signature();
			r["gloss"] = p.gloss;
			r["lexical"] = p.lexical.str();
			r["morphemes"] = p.morphemeNames();
			out.push_back(r);
		}
		return { 200, json{ { "word", text::lower(std::string_view(*w)) }, { "parses", out } }.dump() };
	}

	void mount(httplib::Server& server, const Service& service, const std::filesystem::path& staticDir)
	{
		server.Get(R"(/api/.*)", [&](const httplib::Request& req, httplib::Response& res)
		{
			std::multimap<std::string, std::string> params(req.params.begin(), req.params.end());
			const auto r = service.handle(req.path, params);
			res.status = r.status;
			res.set_content(r.body, r.contentType);
		});
		if (!staticDir.empty() && std::filesystem::is_directory(staticDir)) server.set_mount_point("/", staticDir.string());
	}

	void serve(const Service& service, const std::string& host, int port, const std::filesystem::path& staticDir)
	{
		httplib::Server server;
		mount(server, service, staticDir);
		std::cerr << "morfwork: listening on http://" << host << ":" << port << "\n";
		if (!server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
	}
}
