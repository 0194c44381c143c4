#include <morfwork/analyzer.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <algorithm>
#include <tuple>

namespace morfwork
{
	std::vector<std::string> Parse::morphemeNames() const
	{
		std::vector<std::string> out;
		for (auto& m : morphemes) out.push_back(m.name);
		return out;
	}

	std::string Parse::signature() const
	{
		std::string s = root.root + "/" + std::string(name(root.category));
		for (auto& m : morphemes) s += "+" + m.name;
		return s;
	}

	FeatureBundle makeFeatures(const RootEntry& root, const std::vector<const Morpheme*>& morphemes)
	{
		FeatureBundle f;
		f.root = root.root;
		f[Dimension::Category] = std::string(name(root.category));
		for (auto* m : morphemes)
		{
			f.suffixes.push_back(m->name);
			for (auto& [d, v] : m->features) f[d] = v;
		}
		return f;
	}

	std::string makeGloss(std::string_view root, const std::vector<std::string>& lexicalForms)
	{
		std::string g(root);
		for (auto& form : lexicalForms)
			if (!form.empty() && form != "0") g += form;
		return g;
	}

	bool parseOrder(const Parse& a, const Parse& b)
	{
		const auto la = a.root.lexicalForm().size();
		const auto lb = b.root.lexicalForm().size();
		if (la != lb) return la > lb;
		if (a.morphemes.size() != b.morphemes.size()) return a.morphemes.size() < b.morphemes.size();
		return std::tie(a.gloss, a.root.category) < std::tie(b.gloss, b.root.category) ||
			(std::tie(a.gloss, a.root.category) == std::tie(b.gloss, b.root.category) && a.signature() < b.signature());
	}

	Analyzer::Analyzer(const Lexicon& lexicon, const Morphotactics& morphotactics, const PhonologyEngine& engine)
		: lexicon_(lexicon), morph_(morphotactics), engine_(engine)
	{
	}

	Parse Analyzer::makeParse(const RootEntry& root, const std::vector<const Morpheme*>& path) const
	{
		Parse p;
		p.root = root;
		for (auto* m : path) p.morphemes.push_back(*m);
		p.lexical = buildLexical(root, path);
		p.features = makeFeatures(root, path);
		std::vector<std::string> forms;
		for (auto* m : path) forms.push_back(text::encode(m->lexicalForm));
		p.gloss = makeGloss(root.root, forms);
		return p;
	}

	std::vector<Parse> Analyzer::analyze(std::string_view word) const
	{
		const auto surface = text::lower(text::decode(text::trim(word)));
		if (surface.empty()) throw Error("empty word");

		std::vector<Parse> out;
		std::vector<const Morpheme*> path;
		for (const RootEntry* root : lexicon_.candidateRoots(surface))
		{
			auto frontier = engine_.advance(engine_.start(), root->lexicalForm(), surface);
			if (frontier.empty()) continue;

			auto walk = [&](auto&& self, Morphotactics::StateId state, const PhonologyEngine::Frontier& fr) -> void
			{
				if (morph_.accepting(state) && engine_.accepts(fr, surface.size())) out.push_back(makeParse(*root, path));
				for (auto& t : morph_.transitions(state))
				{
					path.push_back(t.morpheme);
					if (t.morpheme->isZero())
						self(self, t.target, fr);
					else if (auto nf = engine_.advance(fr, t.morpheme->lexicalForm, surface); !nf.empty())
						self(self, t.target, nf);
					path.pop_back();
				}
			};
			walk(walk, morph_.start(root->category), frontier);
		}
		if (out.empty()) throw UnknownWord(text::encode(surface));
		std::sort(out.begin(), out.end(), parseOrder);
		return out;
	}

	std::size_t Analyzer::ambiguityDegree(std::string_view word) const
	{
		try
		{
			return analyze(word).size();
		}
		catch (const UnknownWord&)
		{
			return 0;
		}
		catch (const Error&)
		{
			return 0;
		}
	}

	std::string Analyzer::generate(const RootEntry& root, const std::vector<std::string>& morphemeNames) const
	{
		for (auto& n : morphemeNames)
			if (!morph_.find(n)) throw IllegalMorphotactics("unknown morpheme " + n);
		auto path = morph_.acceptPath(root.category, morphemeNames);
		if (!path)
		{
			std::string seq;
			for (auto& n : morphemeNames) seq += (seq.empty() ? "" : ",") + n;
			throw IllegalMorphotactics("morpheme sequence [" + seq + "] is not accepted after " + root.root + "/" +
				std::string(name(root.category)));
		}
		const auto lex = buildLexical(root, *path);
		const auto outs = engine_.generate(lex);
		if (outs.empty()) throw NoRealization("no surface realization for " + lex.str());
		if (outs.size() > 1) throw NoRealization("ambiguous surface realization for " + lex.str());
		return text::encode(*outs.begin());
	}

	std::string Analyzer::generate(std::string_view root, const std::vector<std::string>& morphemeNames) const
	{
		const auto entries = lexicon_.find(text::lower(root));
		if (entries.empty()) throw UnknownWord(std::string(root));
		for (std::size_t i = 0; i < entries.size(); ++i)
		{
			if (i + 1 == entries.size() || morph_.acceptPath(entries[i]->category, morphemeNames))
				return generate(*entries[i], morphemeNames);
		}
		throw UnknownWord(std::string(root));
	}
}
