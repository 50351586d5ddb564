// Closed-class word lists and small frequency tables backing the heuristic
// NLP stages. Everything here is deterministic and ships with the adapter.

export const DETERMINERS = new Set([
  'a', 'an', 'the', 'this', 'that', 'these', 'those', 'all', 'every', 'most',
  'many', 'some', 'few', 'no', 'none', 'each', 'any', 'both', 'another',
]);

export const PREPOSITIONS = new Set([
  'in', 'on', 'at', 'by', 'with', 'from', 'to', 'of', 'for', 'about', 'into',
  'onto', 'near', 'inside', 'outside', 'under', 'over', 'above', 'below',
  'during', 'before', 'after', 'until', 'via', 'through', 'across', 'against',
  'between', 'among', 'around', 'without',
]);

export const PRONOUNS = new Set([
  'i', 'you', 'he', 'she', 'it', 'we', 'they', 'me', 'him', 'her', 'us',
  'them', 'my', 'your', 'his', 'its', 'our', 'their', 'mine', 'yours',
  'hers', 'ours', 'theirs', 'itself', 'themselves', 'himself', 'herself',
]);

export const AUXILIARIES = new Set([
  'is', 'are', 'was', 'were', 'am', 'be', 'been', 'being', 'do', 'does',
  'did', 'have', 'has', 'had', 'will', 'would', 'can', 'could', 'shall',
  'should', 'may', 'might', 'must',
]);

export const CONJUNCTIONS = new Set(['and', 'or', 'but', 'nor', 'yet']);

export const SUBORDINATORS = new Set([
  'because', 'since', 'although', 'though', 'while', 'when', 'if', 'unless',
  'that', 'whether',
]);

export const ADVERBS = new Set([
  'always', 'typically', 'mostly', 'mainly', 'usually', 'normally',
  'regularly', 'frequently', 'commonly', 'often', 'sometimes', 'occasionally',
  'hardly', 'rarely', 'never', 'seldom', 'very', 'really', 'quite', 'too',
  'also', 'here', 'there', 'now', 'then', 'well', 'not',
]);

export const ADJECTIVES = new Set([
  'large', 'small', 'big', 'little', 'good', 'bad', 'gentle', 'wild',
  'young', 'old', 'new', 'long', 'short', 'tall', 'heavy', 'light',
  'strong', 'weak', 'fast', 'slow', 'gray', 'grey', 'white', 'black',
  'intelligent', 'social', 'majestic', 'dangerous', 'local', 'public',
  'electric', 'male', 'female', 'baby', 'african', 'asian', 'common',
]);

// common verb stems; inflections are recognized morphologically
export const VERB_STEMS = new Set([
  'eat', 'feed', 'drink', 'use', 'have', 'live', 'sleep', 'hunt', 'run',
  'walk', 'swim', 'fly', 'jump', 'play', 'make', 'take', 'give', 'get',
  'go', 'come', 'see', 'hear', 'say', 'tell', 'know', 'think', 'want',
  'need', 'like', 'love', 'hate', 'carry', 'bring', 'move', 'grow', 'keep',
  'protect', 'fight', 'catch', 'perform', 'remember', 'forget', 'bathe',
  'roam', 'graze', 'weigh', 'contain', 'require', 'consist', 'include',
  'produce', 'build', 'dig', 'pick', 'drop', 'push', 'pull', 'spray',
  'travel', 'migrate', 'communicate', 'breathe', 'chew', 'stomp', 'charge',
  'cool', 'drive', 'ride', 'help', 'find', 'look', 'seem', 'appear',
  'become', 'stay', 'call', 'work', 'read', 'write', 'sing', 'cause',
  'involve', 'resemble', 'desire', 'possess', 'undergo',
]);

// toy gazetteer for entity tags in the MISC column
export const NER_LOCATIONS = new Set([
  'africa', 'asia', 'europe', 'america', 'australia', 'antarctica', 'india',
  'china', 'kenya', 'thailand', 'london', 'paris', 'berlin', 'savanna',
  'sahara', 'amazon', 'nile', 'himalayas',
]);

export const NER_TIMES = new Set([
  'night', 'morning', 'evening', 'noon', 'midnight', 'dawn', 'dusk',
  'today', 'yesterday', 'tomorrow', 'winter', 'summer', 'spring', 'autumn',
]);

export const NER_DATES = new Set([
  'monday', 'tuesday', 'wednesday', 'thursday', 'friday', 'saturday',
  'sunday', 'january', 'february', 'march', 'april', 'may', 'june', 'july',
  'august', 'september', 'october', 'november', 'december',
]);

// frequency ranks for the surprisal model; lower rank = more probable
const COMMON_WORDS = [
  'the', 'of', 'and', 'a', 'to', 'in', 'is', 'are', 'it', 'that',
  'for', 'on', 'with', 'as', 'was', 'were', 'be', 'by', 'at', 'an', 'they',
  'their', 'this', 'have', 'has', 'from', 'or', 'not', 'but', 'what',
  'all', 'when', 'can', 'there', 'use', 'each', 'which', 'she', 'he',
  'how', 'will', 'other', 'about', 'out', 'many', 'then', 'them', 'these',
  'so', 'some', 'her', 'would', 'like', 'him', 'into', 'time', 'look',
  'two', 'more', 'water', 'been', 'who', 'its', 'now', 'find', 'long',
  'down', 'day', 'did', 'get', 'come', 'made', 'may', 'part', 'over',
  'new', 'sound', 'take', 'only', 'little', 'work', 'know', 'place',
  'year', 'live', 'me', 'back', 'give', 'most', 'very', 'after', 'thing',
  'our', 'just', 'name', 'good', 'sentence', 'man', 'think', 'say',
  'great', 'where', 'help', 'through', 'much', 'before', 'line', 'right',
  'too', 'mean', 'old', 'any', 'same', 'tell', 'boy', 'follow', 'came',
  'want', 'show', 'also', 'around', 'form', 'three', 'small', 'set',
  'put', 'end', 'does', 'another', 'well', 'large', 'must', 'big', 'even',
  'such', 'because', 'turn', 'here', 'why', 'ask', 'went', 'men', 'read',
  'need', 'land', 'different', 'home', 'us', 'move', 'try', 'kind',
  'hand', 'picture', 'again', 'change', 'off', 'play', 'spell', 'air',
  'away', 'animal', 'animals', 'house', 'point', 'page', 'letter',
  'mother', 'answer', 'found', 'study', 'still', 'learn', 'should',
  'world', 'high', 'every', 'near', 'add', 'food', 'grass', 'plant',
  'plants', 'last', 'school', 'father', 'keep', 'tree', 'trees', 'never',
  'start', 'city', 'earth', 'eye', 'light', 'head', 'under', 'story',
  'saw', 'left', 'few', 'while', 'along', 'might', 'close', 'something',
  'seem', 'next', 'hard', 'open', 'example', 'begin', 'life', 'always',
  'both', 'paper', 'together', 'got', 'group', 'often', 'important',
  'children', 'side', 'feet', 'car', 'mile', 'walk', 'white', 'sea',
  'began', 'grow', 'took', 'river', 'rivers', 'four', 'carry', 'state',
  'once', 'book', 'hear', 'stop', 'without', 'second', 'later', 'miss',
  'idea', 'enough', 'eat', 'face', 'watch', 'far', 'really', 'almost',
  'let', 'above', 'girl', 'mountain', 'mountains', 'cut', 'young', 'talk',
  'soon', 'list', 'song', 'being', 'leave', 'family', 'body', 'music',
  'color', 'stand', 'sun', 'question', 'fish', 'area', 'mark', 'dog',
  'horse', 'bird', 'birds', 'elephant', 'elephants', 'trunk', 'trunks',
  'herd', 'herds', 'wild', 'milk', 'fruit', 'leaves', 'ears', 'tusks',
  'sleep', 'night', 'africa', 'drink', 'baby', 'female', 'male', 'strong',
  'strength', 'intelligent', 'mammal', 'mammals', 'poachers', 'zoo',
];

export const WORD_RANK: Map<string, number> = new Map(
  COMMON_WORDS.map((word, rank) => [word, rank]),
);

// frequent word pairs; presence boosts the bigram probability
const COMMON_BIGRAM_LIST = [
  'of the', 'in the', 'on the', 'to the', 'at the', 'for the', 'with the',
  'from the', 'and the', 'it is', 'they are', 'there is', 'there are',
  'this is', 'is a', 'is an', 'is the', 'are the', 'can be', 'will be',
  'has been', 'have been', 'do not', 'does not', 'did not', 'is not',
  'are not', 'the wild', 'eat grass', 'elephants eat', 'elephants are',
  'elephants have', 'an elephant', 'the elephant', 'baby elephant',
  'drink water', 'drinks milk', 'eats grass', 'at night', 'in africa',
  'each other', 'such as', 'more than', 'a lot', 'lot of', 'kind of',
  'part of', 'one of', 'some of', 'most of', 'all of', 'out of',
  'a few', 'a large', 'a small', 'very large', 'is made', 'made of',
  'is used', 'used for', 'is part', 'a symbol', 'symbol of', 'live in',
  'lives in', 'they eat', 'they have', 'they live', 'it eats', 'it has',
  'grass and', 'water and',
];

export const COMMON_BIGRAMS: Set<string> = new Set(COMMON_BIGRAM_LIST);

export const POSITIVE_WORDS = new Set([
  'good', 'great', 'excellent', 'amazing', 'wonderful', 'beautiful',
  'lovely', 'gentle', 'friendly', 'smart', 'intelligent', 'majestic',
  'graceful', 'happy', 'joyful', 'magnificent', 'impressive', 'adorable',
  'best', 'brilliant', 'delightful', 'fantastic', 'kind', 'loyal',
  'peaceful', 'playful', 'strong', 'superb', 'gentle', 'caring',
  'remarkable', 'fascinating', 'love', 'loves', 'enjoy', 'enjoys',
  'thrive', 'thrives', 'healthy', 'safe',
]);

export const NEGATIVE_WORDS = new Set([
  'bad', 'terrible', 'awful', 'horrible', 'ugly', 'cruel', 'dangerous',
  'deadly', 'poor', 'sad', 'angry', 'vicious', 'nasty', 'dirty', 'sick',
  'weak', 'worst', 'brutal', 'grim', 'tragic', 'hunt', 'hunts', 'hunted',
  'kill', 'kills', 'killed',
  'poached', 'poachers', 'threatened', 'endangered', 'suffering', 'suffer',
  'die', 'dies', 'dying', 'dead', 'hurt', 'harm', 'harmful', 'fear',
  'afraid', 'hate', 'hates', 'attack', 'attacks',
]);
