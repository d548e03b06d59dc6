import json
import os.path
from collections import Counter

data = Counter(json.loads(os.path.basename('x.json')))
